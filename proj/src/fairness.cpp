#include "aidrin/fairness.hpp"

#include <algorithm>
#include <cmath>

#include "aidrin/error.hpp"

namespace aidrin {
namespace {

const Column& categorical_column(const Dataset& ds, const std::string& name,
                                 const char* role) {
  const Column& col = ds.column(name);
  if (!col.is_categorical())
    throw Error(std::string(role) + " \"" + name +
                "\" must be categorical; bin numeric columns before use");
  return col;
}

std::vector<std::size_t> level_counts(const Column& col) {
  std::vector<std::size_t> counts(col.levels().size(), 0);
  for (auto code : col.codes())
    if (code != Column::kMissingCode) ++counts[static_cast<std::size_t>(code)];
  return counts;
}

double distance(const std::vector<double>& a, const std::vector<double>& b, DistanceKind) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

}  // namespace

GroupDistribution representation(const Dataset& ds, const std::string& sensitive) {
  const Column& col = categorical_column(ds, sensitive, "sensitive attribute");
  auto counts = level_counts(col);
  std::size_t total = 0;
  for (auto c : counts) total += c;
  if (total == 0) throw Error("sensitive attribute \"" + sensitive + "\" has no values");

  GroupDistribution g;
  g.attribute = sensitive;
  double lo = 1.0, hi = 0.0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] == 0) continue;
    const double p = static_cast<double>(counts[i]) / static_cast<double>(total);
    g.counts[col.levels()[i]] = counts[i];
    g.proportions[col.levels()[i]] = p;
    lo = std::min(lo, p);
    hi = std::max(hi, p);
  }
  if (g.proportions.size() == 1) {
    g.representation_rate = 1.0;
    g.warnings.push_back("sensitive attribute \"" + sensitive +
                         "\" has a single group; representation rate set to 1");
  } else {
    g.representation_rate = lo / hi;
  }
  return g;
}

ConditionalTable conditional_probabilities(const Dataset& ds, const std::string& sensitive,
                                           const std::string& target,
                                           std::vector<std::string>* warnings) {
  const Column& a = categorical_column(ds, sensitive, "sensitive attribute");
  const Column& y = categorical_column(ds, target, "target");
  const std::size_t na = a.levels().size(), ny = y.levels().size();
  std::vector<std::size_t> joint(na * ny, 0), group_total(na, 0);
  std::vector<bool> group_seen(na, false);
  std::vector<bool> target_seen(ny, false);
  auto ac = a.codes();
  auto yc = y.codes();
  for (std::size_t r = 0; r < ac.size(); ++r) {
    if (ac[r] == Column::kMissingCode) continue;
    group_seen[static_cast<std::size_t>(ac[r])] = true;
    if (yc[r] == Column::kMissingCode) continue;
    const auto g = static_cast<std::size_t>(ac[r]), t = static_cast<std::size_t>(yc[r]);
    ++joint[g * ny + t];
    ++group_total[g];
    target_seen[t] = true;
  }

  ConditionalTable table;
  for (std::size_t t = 0; t < ny; ++t) {
    if (!target_seen[t]) continue;
    auto& row = table[y.levels()[t]];
    for (std::size_t g = 0; g < na; ++g) {
      if (group_total[g] == 0) continue;
      row[a.levels()[g]] =
          static_cast<double>(joint[g * ny + t]) / static_cast<double>(group_total[g]);
    }
  }
  for (std::size_t g = 0; g < na; ++g)
    if (group_seen[g] && group_total[g] == 0 && warnings)
      warnings->push_back("group \"" + a.levels()[g] + "\" of \"" + sensitive +
                          "\" has no rows with a target value; excluded");
  if (table.empty()) throw Error("no rows with both \"" + sensitive + "\" and \"" + target +
                                 "\" present");
  return table;
}

StatisticalRateResult statistical_rate(const Dataset& ds, const std::string& sensitive,
                                       const std::string& target) {
  StatisticalRateResult r;
  r.sensitive = sensitive;
  r.target = target;
  r.conditional = conditional_probabilities(ds, sensitive, target, &r.warnings);
  r.overall = 1.0;
  for (const auto& [label, by_group] : r.conditional) {
    double lo = 1.0, hi = 0.0;
    for (const auto& [group, p] : by_group) {
      lo = std::min(lo, p);
      hi = std::max(hi, p);
    }
    // hi == 0 cannot happen: the target label occurs in at least one group.
    const double rate = lo / hi;
    r.per_target_rate[label] = rate;
    r.overall = std::min(r.overall, rate);
  }
  return r;
}

double target_std_dev(const std::vector<double>& p) {
  if (p.empty()) throw Error("target standard deviation of zero groups");
  auto [lo, hi] = std::minmax_element(p.begin(), p.end());
  if (*lo == *hi) return 0.0;
  double mu = 0.0;
  for (double v : p) mu += v;
  mu /= static_cast<double>(p.size());
  double ss = 0.0;
  for (double v : p) ss += (v - mu) * (v - mu);
  return std::sqrt(ss / static_cast<double>(p.size()));
}

TsdResult tsd(const Dataset& ds, const std::string& sensitive, const std::string& target) {
  TsdResult r;
  r.sensitive = sensitive;
  r.target = target;
  auto table = conditional_probabilities(ds, sensitive, target, &r.warnings);
  bool single_group = false;
  for (const auto& [label, by_group] : table) {
    std::vector<double> p;
    for (const auto& [group, v] : by_group) p.push_back(v);
    double mu = 0.0;
    for (double v : p) mu += v;
    r.mu_per_target[label] = mu / static_cast<double>(p.size());
    r.per_target[label] = target_std_dev(p);
    single_group = p.size() == 1;
  }
  if (single_group)
    r.warnings.push_back("only one sensitive group present; TSD is 0 by definition");
  return r;
}

double imbalance_degree(const std::vector<double>& zeta, DistanceKind kind) {
  const std::size_t k = zeta.size();
  if (k < 2) throw Error("imbalance degree needs at least two classes");
  const double uniform = 1.0 / static_cast<double>(k);
  std::size_t m = 0;
  for (double p : zeta)
    if (p < uniform) ++m;
  if (m == 0) return 0.0;

  std::vector<double> e(k, uniform);
  std::vector<double> iota(k, 0.0);
  for (std::size_t i = m; i + 1 < k; ++i) iota[i] = uniform;
  iota[k - 1] = static_cast<double>(m + 1) / static_cast<double>(k);
  return distance(zeta, e, kind) / distance(iota, e, kind) + static_cast<double>(m - 1);
}

ImbalanceResult imbalance_degree(const Dataset& ds, const std::string& class_column) {
  const Column& col = categorical_column(ds, class_column, "class column");
  auto counts = level_counts(col);
  std::size_t total = 0;
  for (auto c : counts) total += c;

  ImbalanceResult r;
  r.class_column = class_column;
  std::vector<double> zeta;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] == 0) continue;
    const double p = static_cast<double>(counts[i]) / static_cast<double>(total);
    zeta.push_back(p);
    r.proportions[col.levels()[i]] = p;
  }
  if (zeta.size() < 2)
    throw Error("class column \"" + class_column + "\" needs at least two classes");
  const double uniform = 1.0 / static_cast<double>(zeta.size());
  for (double p : zeta)
    if (p < uniform) ++r.minority_count;
  r.id_score = imbalance_degree(zeta, r.distance);
  return r;
}

}  // namespace aidrin
