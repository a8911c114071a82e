#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "aidrin/dataset.hpp"
#include "aidrin/design_matrix.hpp"

namespace aidrin {

struct PreprocessPlan {
  std::vector<std::string> feature_columns;
  std::string target_column;
  std::size_t input_rows = 0;
  std::size_t dropped_missing_rows = 0;
  std::size_t dropped_duplicate_rows = 0;
  std::size_t dropped_outlier_rows = 0;
  std::size_t output_rows = 0;
  /// categorical feature -> emitted indicator column names
  std::map<std::string, std::vector<std::string>> one_hot;
  /// target label for each encoded class value 0..C-1
  std::vector<std::string> class_labels;
  double outlier_k = 1.5;
};

struct PreparedData {
  DesignMatrix X;
  std::vector<double> y;
  PreprocessPlan plan;
  FeatureGroups groups;
  std::vector<std::size_t> source_rows;  // dataset row of each design row
};

inline constexpr std::size_t kMinTrainingRows = 20;

/// Drops rows with missing selected values, then exact duplicates over the
/// selected columns, then rows outside any numeric feature's Tukey fence
/// (k = 1.5). Categorical features are one-hot encoded (levels sorted) and
/// the categorical target is label-encoded in sorted label order.
PreparedData preprocess(const Dataset& ds, const std::vector<std::string>& features,
                        const std::string& target);

}  // namespace aidrin
