#pragma once

#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "aidrin/dataset.hpp"
#include "aidrin/random.hpp"

namespace aidrin::testing {

inline std::string data_path(const std::string& file) {
  return std::string(AIDRIN_DATA_DIR) + "/" + file;
}

inline Column cat(std::string name, std::vector<std::string> labels) {
  std::vector<std::optional<std::string>> v(labels.begin(), labels.end());
  return Column::categorical(std::move(name), std::move(v));
}

inline Column num(std::string name, std::vector<double> values) {
  std::vector<std::optional<double>> v(values.begin(), values.end());
  return Column::numeric(std::move(name), std::move(v));
}

// Entropy in nats of the empirical distribution of `labels`.
inline double entropy_of(const std::vector<std::string>& labels) {
  std::map<std::string, double> counts;
  for (const auto& l : labels) counts[l] += 1;
  double h = 0;
  for (const auto& [_, c] : counts) {
    const double p = c / static_cast<double>(labels.size());
    h -= p * std::log(p);
  }
  return h;
}

// U(X|Y) straight from the definition, summing over (x, y) string pairs.
inline double theils_u_oracle(const std::vector<std::string>& x, const std::vector<std::string>& y) {
  const double n = static_cast<double>(x.size());
  const double hx = entropy_of(x);
  if (hx == 0.0) return 1.0;
  std::map<std::string, double> py;
  std::map<std::pair<std::string, std::string>, double> pxy;
  for (std::size_t i = 0; i < x.size(); ++i) {
    py[y[i]] += 1 / n;
    pxy[{x[i], y[i]}] += 1 / n;
  }
  double h_x_given_y = 0;
  for (const auto& [key, p] : pxy) h_x_given_y -= p * std::log(p / py[key.second]);
  return (hx - h_x_given_y) / hx;
}

inline std::vector<std::string> random_labels(Rng& rng, std::size_t n, std::size_t k,
                                              const std::string& prefix) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(uniform_index(rng, k)));
  return out;
}

}  // namespace aidrin::testing
