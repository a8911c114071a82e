#include "aidrin/shapley.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <unordered_set>

#include "aidrin/error.hpp"
#include "aidrin/random.hpp"

namespace aidrin {
namespace {

constexpr std::uint64_t kBackgroundStream = 1;
constexpr std::uint64_t kEvaluationStream = 2;
constexpr std::uint64_t kPermutationStream = 3;
constexpr double kExactTolerance = 1e-9;

struct Players {
  std::vector<std::vector<std::size_t>> columns;  // design columns per feature
};

Players players_of(const DesignMatrix& X, const FeatureGroups& groups) {
  if (groups.column_group.size() != X.cols())
    throw Error("feature grouping does not cover the design matrix");
  if (groups.size() == 0) throw Error("no features to attribute");
  Players p;
  p.columns.resize(groups.size());
  for (std::size_t c = 0; c < X.cols(); ++c) {
    const std::size_t g = groups.column_group[c];
    if (g >= groups.size()) throw Error("feature grouping refers to an unknown feature");
    p.columns[g].push_back(c);
  }
  return p;
}

void copy_player(std::vector<double>& z, std::span<const double> x,
                 const std::vector<std::size_t>& columns) {
  for (std::size_t c : columns) z[c] = x[c];
}

ShapleyResult start_result(const Predictor& model, const DesignMatrix& X,
                           const FeatureGroups& groups, const ShapleyConfig& config) {
  if (X.rows() == 0) throw Error("no rows to explain");
  if (config.background_size == 0 || config.evaluation_rows == 0)
    throw Error("background and evaluation sizes must be positive");
  ShapleyResult r;
  r.features = groups.names;
  r.seed = config.seed;
  r.background_rows = sample_rows(X.rows(), config.background_size, config.seed, kBackgroundStream);
  r.rows = sample_rows(X.rows(), config.evaluation_rows, config.seed, kEvaluationStream);
  double sum = 0.0;
  for (auto b : r.background_rows) sum += model.predict(X.row(b));
  r.baseline = sum / static_cast<double>(r.background_rows.size());
  return r;
}

void finish_result(ShapleyResult& r) {
  const std::size_t d = r.features.size();
  r.mean_abs.assign(d, 0.0);
  for (const auto& row : r.phi)
    for (std::size_t j = 0; j < d; ++j) r.mean_abs[j] += std::abs(row[j]);
  for (std::size_t j = 0; j < d; ++j) {
    r.mean_abs[j] /= static_cast<double>(r.phi.size());
    r.per_feature[r.features[j]] = r.mean_abs[j];
  }
  r.efficiency_residual.clear();
  for (std::size_t i = 0; i < r.phi.size(); ++i) {
    double total = 0.0;
    for (double v : r.phi[i]) total += v;
    r.efficiency_residual.push_back(std::abs(total - (r.predictions[i] - r.baseline)));
  }
}

}  // namespace

bool ShapleyResult::efficiency_holds() const {
  for (std::size_t i = 0; i < efficiency_residual.size(); ++i)
    if (efficiency_residual[i] > efficiency_tolerance[i]) return false;
  return true;
}

std::vector<std::size_t> sample_rows(std::size_t rows, std::size_t size, std::uint64_t seed,
                                     std::uint64_t stream) {
  std::vector<std::size_t> out;
  if (size >= rows) {
    out.resize(rows);
    std::iota(out.begin(), out.end(), std::size_t{0});
    return out;
  }
  Rng rng(derive_seed(seed, stream));
  std::unordered_set<std::size_t> taken;
  while (out.size() < size) {
    const std::size_t r = uniform_index(rng, rows);
    if (taken.insert(r).second) out.push_back(r);
  }
  std::sort(out.begin(), out.end());
  return out;
}

ShapleyResult shapley_mc(const Predictor& model, const DesignMatrix& X,
                         const FeatureGroups& groups, const ShapleyConfig& config) {
  if (config.permutations < 2) throw Error("at least two permutations are needed");
  const Players players = players_of(X, groups);
  ShapleyResult r = start_result(model, X, groups, config);
  r.samples_per_feature = config.permutations;
  const std::size_t d = players.columns.size();
  const auto P = static_cast<double>(config.permutations);
  const std::uint64_t row_seed = derive_seed(config.seed, kPermutationStream);

  std::vector<std::size_t> order(d);
  std::vector<double> z(X.cols());
  std::vector<double> sum(d), sum_sq(d);
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    const auto x = X.row(r.rows[i]);
    Rng rng(derive_seed(row_seed, r.rows[i]));
    std::fill(sum.begin(), sum.end(), 0.0);
    std::fill(sum_sq.begin(), sum_sq.end(), 0.0);
    double start_sum = 0.0, start_sq = 0.0;
    for (std::size_t p = 0; p < config.permutations; ++p) {
      std::iota(order.begin(), order.end(), std::size_t{0});
      shuffle(std::span<std::size_t>(order), rng);
      const auto b = X.row(r.background_rows[uniform_index(rng, r.background_rows.size())]);
      std::copy(b.begin(), b.end(), z.begin());
      double previous = model.predict(z);
      start_sum += previous;
      start_sq += previous * previous;
      for (std::size_t j : order) {
        copy_player(z, x, players.columns[j]);
        const double current = model.predict(z);
        const double delta = current - previous;
        sum[j] += delta;
        sum_sq[j] += delta * delta;
        previous = current;
      }
    }
    auto& phi = r.phi.emplace_back(d);
    auto& se = r.std_error.emplace_back(d);
    for (std::size_t j = 0; j < d; ++j) {
      phi[j] = sum[j] / P;
      const double var = std::max(0.0, (sum_sq[j] - P * phi[j] * phi[j]) / (P - 1.0));
      se[j] = std::sqrt(var / P);
    }
    r.predictions.push_back(model.predict(x));
    // Contributions of one sample sum to f(x) - f(b), so the residual
    // against the full-background baseline is the error of the sampled
    // background mean.
    const double start_mean = start_sum / P;
    const double start_var = std::max(0.0, (start_sq - P * start_mean * start_mean) / (P - 1.0));
    r.efficiency_tolerance.push_back(3.0 * std::sqrt(start_var / P) + kExactTolerance);
  }
  finish_result(r);
  return r;
}

ShapleyResult shapley_exact(const Predictor& model, const DesignMatrix& X,
                            const FeatureGroups& groups, const ShapleyConfig& config) {
  const Players players = players_of(X, groups);
  const std::size_t d = players.columns.size();
  if (d > kMaxExactFeatures)
    throw Error("exact Shapley enumeration supports at most " +
                std::to_string(kMaxExactFeatures) + " features; use the Monte Carlo estimator");
  ShapleyResult r = start_result(model, X, groups, config);
  r.exact = true;
  r.samples_per_feature = std::size_t{1} << (d - 1);

  // weight[s] = s! (d - s - 1)! / d!
  std::vector<double> weight(d);
  for (std::size_t s = 0; s < d; ++s)
    weight[s] = std::exp(std::lgamma(static_cast<double>(s) + 1.0) +
                         std::lgamma(static_cast<double>(d - s)) -
                         std::lgamma(static_cast<double>(d) + 1.0));

  const std::size_t coalitions = std::size_t{1} << d;
  std::vector<double> value(coalitions);
  std::vector<double> z(X.cols());
  for (std::size_t row : r.rows) {
    const auto x = X.row(row);
    for (std::size_t mask = 0; mask < coalitions; ++mask) {
      double total = 0.0;
      for (std::size_t b : r.background_rows) {
        const auto bg = X.row(b);
        std::copy(bg.begin(), bg.end(), z.begin());
        for (std::size_t j = 0; j < d; ++j)
          if (mask >> j & 1U) copy_player(z, x, players.columns[j]);
        total += model.predict(z);
      }
      value[mask] = total / static_cast<double>(r.background_rows.size());
    }
    auto& phi = r.phi.emplace_back(d, 0.0);
    r.std_error.emplace_back(d, 0.0);
    for (std::size_t j = 0; j < d; ++j) {
      const std::size_t bit = std::size_t{1} << j;
      for (std::size_t mask = 0; mask < coalitions; ++mask) {
        if (mask & bit) continue;
        const auto size = static_cast<std::size_t>(std::popcount(mask));
        phi[j] += weight[size] * (value[mask | bit] - value[mask]);
      }
    }
    r.predictions.push_back(model.predict(x));
    r.efficiency_tolerance.push_back(kExactTolerance);
  }
  finish_result(r);
  return r;
}

}  // namespace aidrin
