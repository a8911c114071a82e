#include "aidrin/forest.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <thread>

#include "aidrin/error.hpp"
#include "aidrin/random.hpp"

namespace aidrin {
namespace {

// Per-feature candidate thresholds and the row-major bin index of every
// cell: bin(x) = number of thresholds strictly below x, so
// bin(x) <= k  <=>  x <= thresholds[k].
struct BinnedMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::vector<double>> thresholds;
  std::vector<std::uint8_t> bins;

  std::uint8_t at(std::size_t r, std::size_t c) const { return bins[r * cols + c]; }
};

double split_point(double a, double b) {
  const double t = a + (b - a) / 2.0;
  return t < b ? t : a;
}

std::vector<double> candidate_thresholds(std::vector<double> values, std::size_t max_bins) {
  std::sort(values.begin(), values.end());
  std::vector<double> unique = values;
  unique.erase(std::unique(unique.begin(), unique.end()), unique.end());
  std::vector<double> out;
  if (unique.size() <= max_bins) {
    for (std::size_t i = 0; i + 1 < unique.size(); ++i)
      out.push_back(split_point(unique[i], unique[i + 1]));
    return out;
  }
  const std::size_t n = values.size();
  for (std::size_t b = 1; b < max_bins; ++b) {
    const std::size_t idx = b * n / max_bins;
    auto next = std::upper_bound(values.begin(), values.end(), values[idx]);
    if (next == values.end()) break;
    out.push_back(split_point(values[idx], *next));
  }
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

BinnedMatrix bin_matrix(const DesignMatrix& X, std::size_t max_bins) {
  if (max_bins < 2 || max_bins > 256) throw Error("max_bins must lie in [2, 256]");
  BinnedMatrix B;
  B.rows = X.rows();
  B.cols = X.cols();
  B.thresholds.resize(B.cols);
  B.bins.assign(B.rows * B.cols, 0);
  std::vector<double> column(B.rows);
  for (std::size_t c = 0; c < B.cols; ++c) {
    for (std::size_t r = 0; r < B.rows; ++r) column[r] = X.at(r, c);
    B.thresholds[c] = candidate_thresholds(column, max_bins);
    const auto& t = B.thresholds[c];
    for (std::size_t r = 0; r < B.rows; ++r)
      B.bins[r * B.cols + c] = static_cast<std::uint8_t>(
          std::lower_bound(t.begin(), t.end(), column[r]) - t.begin());
  }
  return B;
}

class TreeBuilder {
 public:
  TreeBuilder(const BinnedMatrix& X, std::span<const double> y, const ForestConfig& config,
              std::uint64_t seed)
      : X_(X), y_(y), config_(config), rng_(seed) {
    const auto d = static_cast<double>(X.cols);
    mtry_ = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(std::sqrt(d))));
    feature_order_.resize(X.cols);
    std::iota(feature_order_.begin(), feature_order_.end(), std::size_t{0});
  }

  DecisionTree build() {
    // Bootstrap sample of the same size, kept sorted for memory locality.
    const std::size_t n = X_.rows;
    std::vector<std::uint32_t> multiplicity(n, 0);
    for (std::size_t i = 0; i < n; ++i) ++multiplicity[uniform_index(rng_, n)];
    rows_.clear();
    rows_.reserve(n);
    for (std::size_t r = 0; r < n; ++r)
      rows_.insert(rows_.end(), multiplicity[r], static_cast<std::uint32_t>(r));
    scratch_.resize(n);
    nodes_.clear();
    grow(0, n, 0);
    return DecisionTree(std::move(nodes_));
  }

 private:
  struct Split {
    std::size_t feature = 0;
    std::size_t bin = 0;
    double gain = 0.0;
    bool found = false;
  };

  std::int32_t grow(std::size_t begin, std::size_t end, std::size_t depth) {
    const auto index = static_cast<std::int32_t>(nodes_.size());
    nodes_.emplace_back();
    double sum = 0.0;
    double lo = y_[rows_[begin]], hi = lo;
    for (std::size_t i = begin; i < end; ++i) {
      const double v = y_[rows_[i]];
      sum += v;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    const std::size_t count = end - begin;
    nodes_[static_cast<std::size_t>(index)].value = sum / static_cast<double>(count);
    if (depth >= config_.max_depth || count < config_.min_samples_split || lo == hi)
      return index;

    const Split split = best_split(begin, end, sum);
    if (!split.found) return index;

    std::size_t mid = begin;
    std::size_t spill = 0;
    for (std::size_t i = begin; i < end; ++i) {
      const std::uint32_t r = rows_[i];
      if (X_.at(r, split.feature) <= split.bin)
        rows_[mid++] = r;
      else
        scratch_[spill++] = r;
    }
    std::copy_n(scratch_.begin(), spill, rows_.begin() + static_cast<std::ptrdiff_t>(mid));

    const std::int32_t left = grow(begin, mid, depth + 1);
    const std::int32_t right = grow(mid, end, depth + 1);
    auto& node = nodes_[static_cast<std::size_t>(index)];
    node.feature = static_cast<std::int32_t>(split.feature);
    node.threshold = X_.thresholds[split.feature][split.bin];
    node.left = left;
    node.right = right;
    return index;
  }

  // Scans features in a fresh random order. At least mtry features are
  // evaluated; scanning continues past mtry only while no valid split exists.
  Split best_split(std::size_t begin, std::size_t end, double total_sum) {
    shuffle(std::span<std::size_t>(feature_order_), rng_);
    Split best;
    const double count = static_cast<double>(end - begin);
    const double parent = total_sum * total_sum / count;
    for (std::size_t pos = 0; pos < feature_order_.size(); pos += mtry_) {
      const std::size_t stop = std::min(pos + mtry_, feature_order_.size());
      evaluate(begin, end, pos, stop, parent, total_sum, count, best);
      if (best.found) break;
    }
    return best;
  }

  void evaluate(std::size_t begin, std::size_t end, std::size_t first, std::size_t last,
                double parent, double total_sum, double count, Split& best) {
    const std::size_t k = last - first;
    hist_count_.assign(k * 256, 0);
    hist_sum_.assign(k * 256, 0.0);
    for (std::size_t i = begin; i < end; ++i) {
      const std::uint32_t r = rows_[i];
      const double v = y_[r];
      const std::uint8_t* row_bins = &X_.bins[static_cast<std::size_t>(r) * X_.cols];
      for (std::size_t j = 0; j < k; ++j) {
        const std::size_t b = j * 256 + row_bins[feature_order_[first + j]];
        ++hist_count_[b];
        hist_sum_[b] += v;
      }
    }
    for (std::size_t j = 0; j < k; ++j) {
      const std::size_t feature = feature_order_[first + j];
      const std::size_t n_thresholds = X_.thresholds[feature].size();
      std::uint32_t left_count = 0;
      double left_sum = 0.0;
      for (std::size_t b = 0; b < n_thresholds; ++b) {
        left_count += hist_count_[j * 256 + b];
        left_sum += hist_sum_[j * 256 + b];
        if (left_count == 0) continue;
        const double right_count = count - left_count;
        if (right_count <= 0.0) break;
        const double right_sum = total_sum - left_sum;
        const double gain = left_sum * left_sum / left_count +
                            right_sum * right_sum / right_count - parent;
        if (gain > 1e-12 * std::max(1.0, std::abs(parent)) && gain > best.gain) {
          best = {feature, b, gain, true};
        }
      }
    }
  }

  const BinnedMatrix& X_;
  std::span<const double> y_;
  const ForestConfig& config_;
  Rng rng_;
  std::size_t mtry_ = 1;
  std::vector<std::size_t> feature_order_;
  std::vector<std::uint32_t> rows_;
  std::vector<std::uint32_t> scratch_;
  std::vector<std::uint32_t> hist_count_;
  std::vector<double> hist_sum_;
  std::vector<TreeNode> nodes_;
};

}  // namespace

std::size_t DecisionTree::depth() const {
  std::vector<std::size_t> d(nodes_.size(), 0);
  std::size_t deepest = 0;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    deepest = std::max(deepest, d[i]);
    if (nodes_[i].feature >= 0) {
      d[static_cast<std::size_t>(nodes_[i].left)] = d[i] + 1;
      d[static_cast<std::size_t>(nodes_[i].right)] = d[i] + 1;
    }
  }
  return deepest;
}

RandomForest RandomForest::train(const DesignMatrix& X, std::span<const double> y,
                                 const ForestConfig& config) {
  if (X.rows() == 0 || X.cols() == 0) throw Error("cannot train on an empty design matrix");
  if (y.size() != X.rows()) throw Error("target length differs from design matrix rows");
  if (config.tree_count == 0) throw Error("tree_count must be positive");
  if (X.rows() > UINT32_MAX) throw Error("too many rows for the forest learner");

  RandomForest forest;
  forest.config_ = config;
  forest.width_ = X.cols();
  forest.constant_target_ = std::all_of(y.begin(), y.end(), [&](double v) { return v == y[0]; });

  const BinnedMatrix binned = bin_matrix(X, config.max_bins);
  std::vector<std::vector<TreeNode>> built(config.tree_count);
  std::size_t workers = config.threads ? config.threads : std::thread::hardware_concurrency();
  workers = std::clamp<std::size_t>(workers, 1, config.tree_count);

  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t t = next++; t < config.tree_count; t = next++) {
      TreeBuilder builder(binned, y, config, derive_seed(config.seed, t));
      built[t] = builder.build().nodes();
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  forest.trees_.reserve(config.tree_count);
  for (auto& nodes : built) forest.trees_.emplace_back(std::move(nodes));
  return forest;
}

double RandomForest::predict(std::span<const double> row) const {
  if (row.size() != width_) throw Error("prediction row width differs from training width");
  double sum = 0.0;
  for (const auto& tree : trees_) sum += tree.predict(row);
  return sum / static_cast<double>(trees_.size());
}

bool RandomForest::uses_feature(std::size_t column) const {
  for (const auto& tree : trees_)
    for (const auto& node : tree.nodes())
      if (node.feature == static_cast<std::int32_t>(column)) return true;
  return false;
}

}  // namespace aidrin
