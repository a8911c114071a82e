#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "aidrin/dataset.hpp"

namespace aidrin {

/// Linear interpolation between closest ranks: h = q*(n-1),
/// v[floor h] + (h - floor h) * (v[floor h + 1] - v[floor h]).
/// `sorted` must be ascending and non-empty; q in [0, 1].
double quantile(std::span<const double> sorted, double q);

struct NumericSummary {
  double min = 0, max = 0, mean = 0;
  double std_dev = 0;  // population
  double p25 = 0, p50 = 0, p75 = 0;
};

struct CategoricalSummary {
  std::size_t distinct_count = 0;
  /// At most 10 entries, by descending count then label.
  std::vector<std::pair<std::string, std::size_t>> top_values;
};

struct ColumnSummary {
  std::string name;
  ValueKind kind = ValueKind::Categorical;
  std::size_t non_missing = 0;
  std::size_t missing = 0;
  std::optional<NumericSummary> numeric;          // absent when no values
  std::optional<CategoricalSummary> categorical;  // set for categorical columns
};

struct DatasetSummary {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t numeric_count = 0;
  std::size_t categorical_count = 0;
  std::vector<ColumnSummary> columns;
};

ColumnSummary summarize_column(const Column& col);
DatasetSummary summarize(const Dataset& ds);

}  // namespace aidrin
