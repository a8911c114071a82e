#include "aidrin/serialize.hpp"

namespace aidrin {

using nlohmann::json;

namespace {

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

}  // namespace

json to_json_value(const DatasetSummary& s) {
  json cols = json::array();
  for (const auto& c : s.columns) {
    json col = {{"name", c.name},
                {"kind", to_string(c.kind)},
                {"non_missing", c.non_missing},
                {"missing", c.missing}};
    if (c.kind == ValueKind::Numeric) {
      if (c.numeric) {
        const auto& n = *c.numeric;
        col["min"] = n.min;
        col["max"] = n.max;
        col["mean"] = n.mean;
        col["std_dev"] = n.std_dev;
        col["percentiles"] = {{"p25", n.p25}, {"p50", n.p50}, {"p75", n.p75}};
      } else {
        for (const char* key : {"min", "max", "mean", "std_dev", "percentiles"}) col[key] = nullptr;
      }
    }
    if (c.categorical) {
      col["distinct_count"] = c.categorical->distinct_count;
      json top = json::array();
      for (const auto& [label, count] : c.categorical->top_values)
        top.push_back({{"label", label}, {"count", count}});
      col["top_values"] = std::move(top);
    }
    cols.push_back(std::move(col));
  }
  return {{"dimensions", {{"rows", s.rows}, {"cols", s.cols}}},
          {"numeric_count", s.numeric_count},
          {"categorical_count", s.categorical_count},
          {"std_dev_definition", "population"},
          {"quantile_method", "linear interpolation between closest ranks"},
          {"columns", std::move(cols)}};
}

json to_json_value(const CompletenessResult& r) {
  return {{"per_column", r.per_column}, {"overall", r.overall}};
}

json to_json_value(const OutlierResult& r) {
  json per = json::object();
  for (const auto& [name, f] : r.per_column)
    per[name] = {{"q1", f.q1},
                 {"q3", f.q3},
                 {"lower", f.lower},
                 {"upper", f.upper},
                 {"outliers", f.outlier_count},
                 {"non_missing", f.non_missing},
                 {"fraction", f.fraction}};
  return {{"k", r.k}, {"per_column", std::move(per)}, {"overall", r.overall},
          {"aggregation", "unweighted mean over numeric columns"}};
}

json to_json_value(const DuplicateResult& r) {
  return {{"score", r.score},
          {"duplicate_row_count", r.duplicate_row_count},
          {"unique_rows", r.unique_rows},
          {"total_rows", r.total_rows}};
}

json to_json_value(const CorrelationMatrix& m) {
  json rows = json::array();
  for (const auto& row : m.values) {
    json out = json::array();
    for (const auto& v : row) out.push_back(optional_number(v));
    rows.push_back(std::move(out));
  }
  return {{"kind", m.kind == CorrelationKind::Pearson ? "pearson" : "theils_u"},
          {"labels", m.labels},
          {"values", std::move(rows)},
          {"missing_policy", "pairwise deletion"}};
}

json to_json_value(const GroupDistribution& g) {
  return {{"attribute", g.attribute},
          {"counts", g.counts},
          {"proportions", g.proportions},
          {"representation_rate", g.representation_rate}};
}

json to_json_value(const StatisticalRateResult& r) {
  return {{"sensitive", r.sensitive},
          {"target", r.target},
          {"conditional", r.conditional},
          {"per_target_rate", r.per_target_rate},
          {"overall", r.overall}};
}

json to_json_value(const TsdResult& r) {
  return {{"sensitive", r.sensitive},
          {"target", r.target},
          {"per_target", r.per_target},
          {"mu_per_target", r.mu_per_target}};
}

json to_json_value(const ImbalanceResult& r) {
  return {{"class_column", r.class_column},
          {"proportions", r.proportions},
          {"minority_count", r.minority_count},
          {"id_score", r.id_score},
          {"distance", "euclidean"}};
}

json to_json_value(const RiskResult& r) {
  json bins = json::array();
  for (std::size_t i = 0; i < r.histogram.size(); ++i)
    bins.push_back({{"lower", static_cast<double>(i) / 10.0},
                    {"upper", static_cast<double>(i + 1) / 10.0},
                    {"count", r.histogram[i]}});
  return {{"attributes", r.attributes},
          {"mean", r.mean_risk},
          {"records_scored", r.per_record.size()},
          {"records_skipped", r.skipped_rows},
          {"histogram", std::move(bins)},
          {"scoring", "1 - first-order Markov probability of the attribute sequence"}};
}

json to_json_value(const PreprocessPlan& p) {
  return {{"feature_columns", p.feature_columns},
          {"target_column", p.target_column},
          {"input_rows", p.input_rows},
          {"dropped_missing_rows", p.dropped_missing_rows},
          {"dropped_duplicate_rows", p.dropped_duplicate_rows},
          {"dropped_outlier_rows", p.dropped_outlier_rows},
          {"output_rows", p.output_rows},
          {"one_hot", p.one_hot},
          {"class_labels", p.class_labels}};
}

json to_json_value(const ShapleyResult& r) {
  double max_residual = 0.0;
  for (double v : r.efficiency_residual) max_residual = std::max(max_residual, v);
  return {{"per_feature", r.per_feature},
          {"baseline", r.baseline},
          {"rows_evaluated", r.rows.size()},
          {"background_rows", r.background_rows.size()},
          {"max_efficiency_residual", max_residual},
          {"config",
           {{"estimator", r.exact ? "exact" : "permutation"},
            {"samples_per_feature", r.samples_per_feature},
            {"seed", r.seed}}}};
}

json to_json_value(const FairScore& s) {
  json per = json::object();
  for (auto p : kPrinciples)
    per[std::string(to_string(p))] = {{"fulfilled", s.of(p).fulfilled},
                                      {"total", s.of(p).total}};
  return {{"dialect", to_string(s.dialect)},
          {"per_principle", std::move(per)},
          {"fulfilled_checks", s.fulfilled_checks},
          {"other_keys", s.other_keys},
          {"score_percent", s.score_percent}};
}

json to_json_value(const ChartSpec& c) {
  json series = json::array();
  for (const auto& s : c.series) series.push_back({{"name", s.name}, {"values", s.values}});
  return {{"kind", to_string(c.kind)},
          {"title", c.title},
          {"name", c.name},
          {"x_label", c.x_label},
          {"y_label", c.y_label},
          {"labels", c.labels},
          {"series", std::move(series)}};
}

}  // namespace aidrin
