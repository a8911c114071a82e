#pragma once

#include <optional>
#include <string>
#include <vector>

#include "aidrin/dataset.hpp"

namespace aidrin {

enum class CorrelationKind { Pearson, TheilsU };

/// Square matrix over `labels`. Absent entries (std::nullopt) mark pairs
/// where the coefficient is undefined, e.g. zero variance.
struct CorrelationMatrix {
  CorrelationKind kind = CorrelationKind::Pearson;
  std::vector<std::string> labels;
  std::vector<std::vector<std::optional<double>>> values;
  std::vector<std::string> warnings;

  const std::optional<double>& at(std::size_t row, std::size_t col) const {
    return values.at(row).at(col);
  }
};

/// Product-moment coefficient over rows present in both columns. Absent when
/// fewer than two rows survive or either side has zero variance.
std::optional<double> pearson(const Column& x, const Column& y);

/// Pairwise deletion per pair; needs at least two numeric columns.
CorrelationMatrix pearson_matrix(const Dataset& ds);

/// Uncertainty coefficient U(X|Y) = (H(X) - H(X|Y)) / H(X), natural-log
/// entropies over rows present in both columns. Defined as 1 when H(X) = 0.
double theils_u(const Column& x, const Column& y);

/// Entry (i, j) = U(column_i | column_j); needs two categorical columns.
CorrelationMatrix theils_u_matrix(const Dataset& ds);

}  // namespace aidrin
