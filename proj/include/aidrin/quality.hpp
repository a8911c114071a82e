#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "aidrin/dataset.hpp"

namespace aidrin {

struct CompletenessResult {
  std::map<std::string, double> per_column;  // non-missing / row_count
  double overall = 0.0;                      // non-missing cells / all cells
};

CompletenessResult completeness(const Dataset& ds);

/// Tukey fence over one numeric column.
struct FenceStats {
  double q1 = 0, q3 = 0, lower = 0, upper = 0;
  std::size_t outlier_count = 0;
  std::size_t non_missing = 0;
  double fraction = 0.0;
};

struct OutlierResult {
  double k = 1.5;
  std::map<std::string, FenceStats> per_column;
  double overall = 0.0;  // unweighted mean of per-column fractions
  std::vector<std::string> warnings;
};

inline constexpr std::size_t kMinOutlierValues = 4;

/// Fence for the present values of a column; throws when fewer than
/// kMinOutlierValues values are present or k <= 0. Values strictly outside
/// [Q1 - k*IQR, Q3 + k*IQR] count as outliers.
FenceStats tukey_fence(std::span<const double> values, double k);

OutlierResult outliers(const Dataset& ds, double k = 1.5);

struct DuplicateResult {
  double score = 0.0;  // 1 - unique_rows / total_rows
  std::size_t duplicate_row_count = 0;
  std::size_t unique_rows = 0;
  std::size_t total_rows = 0;
};

/// Rows compare as tuples over `subset` (all columns when absent); missing
/// equals missing and numbers compare by exact value.
DuplicateResult duplicates(const Dataset& ds,
                           const std::optional<std::vector<std::string>>& subset = std::nullopt);

/// Rows from `rows` that are the first occurrence of their tuple over all
/// columns of `ds`, in input order.
std::vector<std::size_t> first_occurrences(const Dataset& ds,
                                           std::span<const std::size_t> rows);

}  // namespace aidrin
