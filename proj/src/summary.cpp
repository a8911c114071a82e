#include "aidrin/summary.hpp"

#include <algorithm>
#include <cmath>

#include "aidrin/error.hpp"

namespace aidrin {

double quantile(std::span<const double> sorted, double q) {
  if (sorted.empty()) throw Error("quantile of an empty sequence");
  if (!(q >= 0.0 && q <= 1.0)) throw Error("quantile level must lie in [0, 1]");
  const double h = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= sorted.size()) return sorted.back();
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[lo + 1] - sorted[lo]);
}

ColumnSummary summarize_column(const Column& col) {
  ColumnSummary s;
  s.name = col.name();
  s.kind = col.kind();
  s.non_missing = col.non_missing_count();
  s.missing = col.missing_count();

  if (col.is_numeric()) {
    auto v = col.present_values();
    if (v.empty()) return s;
    // Accumulating over the sorted values keeps the result independent of
    // row order.
    std::sort(v.begin(), v.end());
    NumericSummary n;
    n.min = v.front();
    n.max = v.back();
    double sum = 0.0;
    for (double x : v) sum += x;
    n.mean = sum / static_cast<double>(v.size());
    double ss = 0.0;
    for (double x : v) ss += (x - n.mean) * (x - n.mean);
    n.std_dev = std::sqrt(ss / static_cast<double>(v.size()));
    n.p25 = quantile(v, 0.25);
    n.p50 = quantile(v, 0.50);
    n.p75 = quantile(v, 0.75);
    s.numeric = n;
    return s;
  }

  std::vector<std::size_t> counts(col.levels().size(), 0);
  for (auto code : col.codes())
    if (code != Column::kMissingCode) ++counts[static_cast<std::size_t>(code)];
  CategoricalSummary c;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] == 0) continue;
    ++c.distinct_count;
    c.top_values.emplace_back(col.levels()[i], counts[i]);
  }
  std::sort(c.top_values.begin(), c.top_values.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });
  if (c.top_values.size() > 10) c.top_values.resize(10);
  s.categorical = std::move(c);
  return s;
}

DatasetSummary summarize(const Dataset& ds) {
  if (ds.empty()) throw Error("cannot summarize an empty dataset");
  DatasetSummary out;
  out.rows = ds.row_count();
  out.cols = ds.column_count();
  for (std::size_t i = 0; i < ds.column_count(); ++i) {
    const Column& col = ds.column(i);
    (col.is_numeric() ? out.numeric_count : out.categorical_count)++;
    out.columns.push_back(summarize_column(col));
  }
  return out;
}

}  // namespace aidrin
