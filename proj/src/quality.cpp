#include "aidrin/quality.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <unordered_set>

#include "aidrin/error.hpp"
#include "aidrin/summary.hpp"

namespace aidrin {

CompletenessResult completeness(const Dataset& ds) {
  if (ds.empty()) throw Error("completeness needs a non-empty dataset");
  CompletenessResult r;
  std::size_t present = 0;
  const auto rows = static_cast<double>(ds.row_count());
  for (std::size_t i = 0; i < ds.column_count(); ++i) {
    const Column& col = ds.column(i);
    present += col.non_missing_count();
    r.per_column[col.name()] = static_cast<double>(col.non_missing_count()) / rows;
  }
  r.overall = static_cast<double>(present) / (rows * static_cast<double>(ds.column_count()));
  return r;
}

FenceStats tukey_fence(std::span<const double> values, double k) {
  if (!(k > 0.0)) throw Error("IQR multiplier k must be positive");
  if (values.size() < kMinOutlierValues)
    throw Error("at least " + std::to_string(kMinOutlierValues) +
                " values are needed for IQR outliers");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  FenceStats f;
  f.q1 = quantile(sorted, 0.25);
  f.q3 = quantile(sorted, 0.75);
  const double iqr = f.q3 - f.q1;
  f.lower = f.q1 - k * iqr;
  f.upper = f.q3 + k * iqr;
  f.non_missing = values.size();
  for (double v : values)
    if (v < f.lower || v > f.upper) ++f.outlier_count;
  f.fraction = static_cast<double>(f.outlier_count) / static_cast<double>(f.non_missing);
  return f;
}

OutlierResult outliers(const Dataset& ds, double k) {
  if (!(k > 0.0)) throw Error("IQR multiplier k must be positive");
  OutlierResult r;
  r.k = k;
  double sum = 0.0;
  for (std::size_t i = 0; i < ds.column_count(); ++i) {
    const Column& col = ds.column(i);
    if (!col.is_numeric()) continue;
    auto values = col.present_values();
    if (values.size() < kMinOutlierValues) {
      r.warnings.push_back("column \"" + col.name() + "\" has fewer than " +
                           std::to_string(kMinOutlierValues) +
                           " values; outliers not computed");
      continue;
    }
    auto fence = tukey_fence(values, k);
    sum += fence.fraction;
    r.per_column.emplace(col.name(), fence);
  }
  if (r.per_column.empty())
    throw Error("outliers need at least one numeric column with " +
                std::to_string(kMinOutlierValues) + " or more values");
  r.overall = sum / static_cast<double>(r.per_column.size());
  return r;
}

namespace {

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

struct RowKeys {
  std::vector<const Column*> cols;
  std::vector<std::uint64_t> hashes;

  bool equal(std::size_t a, std::size_t b) const {
    for (const Column* c : cols) {
      if (c->is_numeric()) {
        double x = c->raw_values()[a], y = c->raw_values()[b];
        bool xm = std::isnan(x), ym = std::isnan(y);
        if (xm != ym || (!xm && x != y)) return false;
      } else if (c->codes()[a] != c->codes()[b]) {
        return false;
      }
    }
    return true;
  }
};

RowKeys hash_rows(const Dataset& ds) {
  RowKeys keys;
  for (std::size_t i = 0; i < ds.column_count(); ++i) keys.cols.push_back(&ds.column(i));
  keys.hashes.assign(ds.row_count(), 0x51ed270b27e4c1dULL);
  for (const Column* c : keys.cols) {
    for (std::size_t r = 0; r < ds.row_count(); ++r) {
      std::uint64_t v;
      if (c->is_numeric()) {
        double x = c->raw_values()[r];
        v = std::isnan(x) ? 0x7ff8dead7ff8deadULL : std::bit_cast<std::uint64_t>(x);
      } else {
        v = static_cast<std::uint64_t>(static_cast<std::int64_t>(c->codes()[r]));
      }
      keys.hashes[r] = mix(keys.hashes[r], v);
    }
  }
  return keys;
}

std::vector<std::size_t> unique_rows_of(const RowKeys& keys, std::span<const std::size_t> rows) {
  auto hash = [&](std::size_t r) { return static_cast<std::size_t>(keys.hashes[r]); };
  auto eq = [&](std::size_t a, std::size_t b) { return keys.equal(a, b); };
  std::unordered_set<std::size_t, decltype(hash), decltype(eq)> seen(rows.size() * 2 + 1,
                                                                      hash, eq);
  std::vector<std::size_t> firsts;
  for (std::size_t r : rows)
    if (seen.insert(r).second) firsts.push_back(r);
  return firsts;
}

}  // namespace

std::vector<std::size_t> first_occurrences(const Dataset& ds,
                                           std::span<const std::size_t> rows) {
  return unique_rows_of(hash_rows(ds), rows);
}

DuplicateResult duplicates(const Dataset& ds,
                           const std::optional<std::vector<std::string>>& subset) {
  if (subset && subset->empty()) throw Error("duplicate check needs a non-empty column subset");
  if (ds.empty()) throw Error("duplicate check needs a non-empty dataset");
  Dataset view = subset ? select_columns(ds, *subset) : ds;
  std::vector<std::size_t> rows(view.row_count());
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = i;
  auto unique = first_occurrences(view, rows);

  DuplicateResult r;
  r.total_rows = view.row_count();
  r.unique_rows = unique.size();
  r.duplicate_row_count = r.total_rows - r.unique_rows;
  r.score = 1.0 - static_cast<double>(r.unique_rows) / static_cast<double>(r.total_rows);
  return r;
}

}  // namespace aidrin
