#include "aidrin/privacy.hpp"

#include <algorithm>
#include <unordered_map>

#include "aidrin/error.hpp"

namespace aidrin {
namespace {

std::vector<const Column*> quasi_identifiers(const Dataset& ds,
                                             const std::vector<std::string>& attributes) {
  if (attributes.empty()) throw Error("privacy risk needs at least one quasi-identifier");
  std::vector<const Column*> cols;
  for (const auto& name : attributes) {
    const Column& col = ds.column(name);
    if (!col.is_categorical())
      throw Error("quasi-identifier \"" + name +
                  "\" must be categorical; bin numeric columns before use");
    cols.push_back(&col);
  }
  return cols;
}

bool complete_row(const std::vector<const Column*>& cols, std::size_t r) {
  return std::none_of(cols.begin(), cols.end(), [r](const Column* c) {
    return c->codes()[r] == Column::kMissingCode;
  });
}

}  // namespace

MarkovRiskModel fit_markov(const Dataset& ds, const std::vector<std::string>& attributes) {
  auto cols = quasi_identifiers(ds, attributes);
  const std::size_t k = cols.size();

  std::vector<std::size_t> first(cols[0]->levels().size(), 0);
  // pair_counts[i][from * levels(i+1) + to]
  std::vector<std::vector<std::size_t>> pair_counts(k > 0 ? k - 1 : 0);
  for (std::size_t i = 0; i + 1 < k; ++i)
    pair_counts[i].assign(cols[i]->levels().size() * cols[i + 1]->levels().size(), 0);

  std::size_t n = 0;
  for (std::size_t r = 0; r < ds.row_count(); ++r) {
    if (!complete_row(cols, r)) continue;
    ++n;
    ++first[static_cast<std::size_t>(cols[0]->codes()[r])];
    for (std::size_t i = 0; i + 1 < k; ++i) {
      const auto from = static_cast<std::size_t>(cols[i]->codes()[r]);
      const auto to = static_cast<std::size_t>(cols[i + 1]->codes()[r]);
      ++pair_counts[i][from * cols[i + 1]->levels().size() + to];
    }
  }
  if (n == 0) throw Error("no rows with every quasi-identifier present");

  MarkovRiskModel model;
  model.attributes = attributes;
  for (std::size_t v = 0; v < first.size(); ++v)
    if (first[v]) model.initial[cols[0]->levels()[v]] =
        static_cast<double>(first[v]) / static_cast<double>(n);

  for (std::size_t i = 0; i + 1 < k; ++i) {
    const std::size_t nto = cols[i + 1]->levels().size();
    auto& table = model.transitions.emplace_back();
    for (std::size_t from = 0; from < cols[i]->levels().size(); ++from) {
      std::size_t row_total = 0;
      for (std::size_t to = 0; to < nto; ++to) row_total += pair_counts[i][from * nto + to];
      if (row_total == 0) continue;
      auto& row = table[cols[i]->levels()[from]];
      for (std::size_t to = 0; to < nto; ++to)
        if (auto c = pair_counts[i][from * nto + to])
          row[cols[i + 1]->levels()[to]] =
              static_cast<double>(c) / static_cast<double>(row_total);
    }
  }
  return model;
}

RiskResult risk_scores(const MarkovRiskModel& model, const Dataset& ds) {
  auto cols = quasi_identifiers(ds, model.attributes);
  const std::size_t k = cols.size();
  if (model.transitions.size() + 1 != k)
    throw Error("Markov model has inconsistent transition tables");

  // Resolve the model's string-keyed tables onto this dataset's codes once.
  std::vector<double> p_first(cols[0]->levels().size(), 0.0);
  for (std::size_t v = 0; v < p_first.size(); ++v)
    if (auto it = model.initial.find(cols[0]->levels()[v]); it != model.initial.end())
      p_first[v] = it->second;
  std::vector<std::vector<double>> p_next(k > 0 ? k - 1 : 0);
  for (std::size_t i = 0; i + 1 < k; ++i) {
    const auto& from_levels = cols[i]->levels();
    const auto& to_levels = cols[i + 1]->levels();
    p_next[i].assign(from_levels.size() * to_levels.size(), 0.0);
    for (std::size_t a = 0; a < from_levels.size(); ++a) {
      auto row = model.transitions[i].find(from_levels[a]);
      if (row == model.transitions[i].end()) continue;
      for (std::size_t b = 0; b < to_levels.size(); ++b)
        if (auto it = row->second.find(to_levels[b]); it != row->second.end())
          p_next[i][a * to_levels.size() + b] = it->second;
    }
  }

  RiskResult r;
  r.attributes = model.attributes;
  std::size_t unseen = 0;
  double sum = 0.0;
  for (std::size_t row = 0; row < ds.row_count(); ++row) {
    if (!complete_row(cols, row)) {
      ++r.skipped_rows;
      continue;
    }
    auto code = [&](std::size_t i) { return static_cast<std::size_t>(cols[i]->codes()[row]); };
    double p = p_first[code(0)];
    for (std::size_t i = 0; i + 1 < k && p > 0.0; ++i)
      p *= p_next[i][code(i) * cols[i + 1]->levels().size() + code(i + 1)];
    if (p == 0.0) ++unseen;
    const double risk = std::clamp(1.0 - p, 0.0, 1.0);
    r.per_record.push_back(risk);
    r.row_index.push_back(row);
    sum += risk;
    ++r.histogram[std::min<std::size_t>(static_cast<std::size_t>(risk * 10.0), 9)];
  }
  if (r.per_record.empty()) throw Error("no rows with every quasi-identifier present");
  r.mean_risk = sum / static_cast<double>(r.per_record.size());
  if (unseen)
    r.warnings.push_back(std::to_string(unseen) +
                         " records contain value sequences unseen by the model; risk set to 1");
  if (r.skipped_rows)
    r.warnings.push_back(std::to_string(r.skipped_rows) +
                         " records skipped for missing quasi-identifier values");
  return r;
}

}  // namespace aidrin
