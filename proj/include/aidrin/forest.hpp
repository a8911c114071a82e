#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "aidrin/design_matrix.hpp"

namespace aidrin {

struct ForestConfig {
  std::size_t tree_count = 100;
  std::size_t max_depth = 8;
  std::uint64_t seed = 42;
  std::size_t min_samples_split = 2;
  /// Candidate thresholds per feature are capped at max_bins - 1; features
  /// with fewer distinct values are split exactly.
  std::size_t max_bins = 256;
  /// 0 = use every hardware thread. Results do not depend on this.
  std::size_t threads = 0;
};

struct TreeNode {
  std::int32_t feature = -1;  // -1 for leaves
  double threshold = 0.0;     // x <= threshold goes left
  std::int32_t left = -1;
  std::int32_t right = -1;
  double value = 0.0;         // mean target of the node's training rows
};

/// Axis-aligned regression tree; node 0 is the root.
class DecisionTree {
 public:
  explicit DecisionTree(std::vector<TreeNode> nodes) : nodes_(std::move(nodes)) {}

  double predict(std::span<const double> row) const {
    std::size_t i = 0;
    while (nodes_[i].feature >= 0) {
      const auto& n = nodes_[i];
      i = static_cast<std::size_t>(row[static_cast<std::size_t>(n.feature)] <= n.threshold
                                       ? n.left
                                       : n.right);
    }
    return nodes_[i].value;
  }

  const std::vector<TreeNode>& nodes() const { return nodes_; }
  std::size_t depth() const;

 private:
  std::vector<TreeNode> nodes_;
};

/// Bagged ensemble of variance-reduction regression trees. Each tree sees a
/// bootstrap sample of the rows and ceil(sqrt(d)) candidate features per
/// split. Prediction is the mean of the trees.
class RandomForest final : public Predictor {
 public:
  static RandomForest train(const DesignMatrix& X, std::span<const double> y,
                            const ForestConfig& config = {});

  double predict(std::span<const double> row) const override;

  const std::vector<DecisionTree>& trees() const { return trees_; }
  const ForestConfig& config() const { return config_; }
  std::size_t width() const { return width_; }
  bool constant_target() const { return constant_target_; }
  /// True if any split in any tree tests design column `column`.
  bool uses_feature(std::size_t column) const;

 private:
  RandomForest() = default;

  std::vector<DecisionTree> trees_;
  ForestConfig config_;
  std::size_t width_ = 0;
  bool constant_target_ = false;
};

}  // namespace aidrin
