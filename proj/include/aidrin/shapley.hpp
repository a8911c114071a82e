#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "aidrin/design_matrix.hpp"

namespace aidrin {

struct ShapleyConfig {
  std::size_t permutations = 128;
  std::size_t background_size = 100;
  std::size_t evaluation_rows = 100;
  std::uint64_t seed = 42;
};

/// Interventional Shapley attributions for a set of evaluated rows. Each
/// source feature (all of its design columns) is one player.
struct ShapleyResult {
  std::vector<std::string> features;
  std::map<std::string, double> per_feature;  // mean |phi| over evaluated rows
  std::vector<double> mean_abs;               // same, in feature order
  double baseline = 0.0;                      // mean output over the background set
  std::vector<std::size_t> background_rows;
  std::vector<std::size_t> rows;              // evaluated design-matrix rows
  std::vector<double> predictions;            // f(x) per evaluated row
  std::vector<std::vector<double>> phi;       // [row][feature]
  std::vector<std::vector<double>> std_error; // [row][feature]; zero for exact
  /// |sum_j phi_j - (f(x) - baseline)| and its declared bound, per row.
  std::vector<double> efficiency_residual;
  std::vector<double> efficiency_tolerance;
  std::size_t samples_per_feature = 0;
  std::uint64_t seed = 0;
  bool exact = false;

  bool efficiency_holds() const;
};

inline constexpr std::size_t kMaxExactFeatures = 10;

/// Sample of min(size, rows) distinct row indices, sorted, drawn from the
/// given stream of `seed`.
std::vector<std::size_t> sample_rows(std::size_t rows, std::size_t size, std::uint64_t seed,
                                     std::uint64_t stream);

/// Permutation sampling. For each evaluated row and each of P samples, a
/// random feature order and a random background row are drawn; features are
/// switched from the background value to the row's value one at a time and
/// each switch contributes the change in model output to that feature.
ShapleyResult shapley_mc(const Predictor& model, const DesignMatrix& X,
                         const FeatureGroups& groups, const ShapleyConfig& config = {});

/// Exact enumeration of all 2^d coalitions with the value function
/// v(S) = mean over background rows b of f(x_S, b_rest). d <= 10.
ShapleyResult shapley_exact(const Predictor& model, const DesignMatrix& X,
                            const FeatureGroups& groups, const ShapleyConfig& config = {});

}  // namespace aidrin
