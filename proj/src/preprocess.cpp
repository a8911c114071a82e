#include "aidrin/preprocess.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "aidrin/error.hpp"
#include "aidrin/quality.hpp"

namespace aidrin {

FeatureGroups FeatureGroups::identity(const std::vector<std::string>& columns) {
  FeatureGroups g;
  g.names = columns;
  g.column_group.resize(columns.size());
  std::iota(g.column_group.begin(), g.column_group.end(), std::size_t{0});
  return g;
}

PreparedData preprocess(const Dataset& ds, const std::vector<std::string>& features,
                        const std::string& target) {
  if (features.empty()) throw Error("feature importance needs at least one feature");
  if (std::find(features.begin(), features.end(), target) != features.end())
    throw Error("target \"" + target + "\" cannot also be a feature");
  std::vector<std::string> selected = features;
  selected.push_back(target);
  const Dataset view = select_columns(ds, selected);
  const Column& target_col = view.column(target);
  if (!target_col.is_categorical())
    throw Error("target \"" + target +
                "\" must be categorical; only classification targets are supported");

  PreparedData out;
  PreprocessPlan& plan = out.plan;
  plan.feature_columns = features;
  plan.target_column = target;
  plan.input_rows = view.row_count();

  std::vector<std::size_t> rows;
  for (std::size_t r = 0; r < view.row_count(); ++r) {
    bool complete = true;
    for (std::size_t c = 0; c < view.column_count() && complete; ++c)
      complete = !view.column(c).is_missing(r);
    if (complete) rows.push_back(r);
  }
  plan.dropped_missing_rows = plan.input_rows - rows.size();

  auto unique = first_occurrences(view, rows);
  plan.dropped_duplicate_rows = rows.size() - unique.size();
  rows = std::move(unique);

  if (rows.size() >= kMinOutlierValues) {
    std::vector<bool> keep(view.row_count(), true);
    for (const auto& name : features) {
      const Column& col = view.column(name);
      if (!col.is_numeric()) continue;
      std::vector<double> values;
      values.reserve(rows.size());
      for (auto r : rows) values.push_back(col.raw_values()[r]);
      auto fence = tukey_fence(values, plan.outlier_k);
      for (auto r : rows) {
        const double v = col.raw_values()[r];
        if (v < fence.lower || v > fence.upper) keep[r] = false;
      }
    }
    std::vector<std::size_t> kept;
    for (auto r : rows)
      if (keep[r]) kept.push_back(r);
    plan.dropped_outlier_rows = rows.size() - kept.size();
    rows = std::move(kept);
  }

  if (rows.size() < kMinTrainingRows)
    throw Error("insufficient data after preprocessing: " + std::to_string(rows.size()) +
                " rows remain, at least " + std::to_string(kMinTrainingRows) + " needed");
  plan.output_rows = rows.size();

  // Column layout: numeric features map to one column, categorical ones to
  // one indicator per level present after filtering.
  std::vector<std::string> design_names;
  FeatureGroups& groups = out.groups;
  struct Block {
    const Column* col;
    std::size_t first;
    std::vector<std::int32_t> code_to_offset;  // -1 when level absent
  };
  std::vector<Block> blocks;
  for (std::size_t f = 0; f < features.size(); ++f) {
    const Column& col = view.column(features[f]);
    groups.names.push_back(features[f]);
    Block block{&col, design_names.size(), {}};
    if (col.is_numeric()) {
      design_names.push_back(features[f]);
      groups.column_group.push_back(f);
    } else {
      std::set<std::string> present;
      for (auto r : rows) present.insert(col.levels()[static_cast<std::size_t>(col.codes()[r])]);
      block.code_to_offset.assign(col.levels().size(), -1);
      auto& emitted = plan.one_hot[features[f]];
      std::int32_t offset = 0;
      for (const auto& level : present) {
        auto code = std::find(col.levels().begin(), col.levels().end(), level) -
                    col.levels().begin();
        block.code_to_offset[static_cast<std::size_t>(code)] = offset++;
        emitted.push_back(features[f] + "=" + level);
        design_names.push_back(emitted.back());
        groups.column_group.push_back(f);
      }
    }
    blocks.push_back(std::move(block));
  }

  std::set<std::string> labels;
  for (auto r : rows)
    labels.insert(target_col.levels()[static_cast<std::size_t>(target_col.codes()[r])]);
  plan.class_labels.assign(labels.begin(), labels.end());
  std::vector<double> code_to_class(target_col.levels().size(), 0.0);
  for (std::size_t c = 0; c < target_col.levels().size(); ++c) {
    auto it = std::find(plan.class_labels.begin(), plan.class_labels.end(),
                        target_col.levels()[c]);
    code_to_class[c] = static_cast<double>(it - plan.class_labels.begin());
  }

  out.X = DesignMatrix(rows.size(), std::move(design_names));
  out.y.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto r = rows[i];
    for (const auto& block : blocks) {
      if (block.col->is_numeric()) {
        out.X.at(i, block.first) = block.col->raw_values()[r];
      } else {
        auto code = static_cast<std::size_t>(block.col->codes()[r]);
        out.X.at(i, block.first + static_cast<std::size_t>(block.code_to_offset[code])) = 1.0;
      }
    }
    out.y.push_back(code_to_class[static_cast<std::size_t>(target_col.codes()[r])]);
  }
  out.source_rows = std::move(rows);
  return out;
}

}  // namespace aidrin
