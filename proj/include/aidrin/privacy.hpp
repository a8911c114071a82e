#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "aidrin/dataset.hpp"

namespace aidrin {

/// First-order Markov chain over the ordered quasi-identifier values of a
/// record: an initial distribution over the first attribute and one
/// conditional table per adjacent attribute pair.
struct MarkovRiskModel {
  std::vector<std::string> attributes;
  std::map<std::string, double> initial;
  /// transitions[i][from][to] = Pr(attr_{i+1} = to | attr_i = from)
  std::vector<std::map<std::string, std::map<std::string, double>>> transitions;
};

struct RiskResult {
  std::vector<std::string> attributes;
  std::vector<double> per_record;      // 1 - modeled probability of the sequence
  std::vector<std::size_t> row_index;  // dataset row of each score
  double mean_risk = 0.0;
  std::array<std::size_t, 10> histogram{};  // uniform bins over [0, 1]
  std::size_t skipped_rows = 0;             // rows with a missing attribute
  std::vector<std::string> warnings;
};

/// Rows missing any selected attribute are dropped before counting.
MarkovRiskModel fit_markov(const Dataset& ds, const std::vector<std::string>& attributes);

/// Record risk is 1 - P(x1) * prod P(x_{i+1} | x_i). Values the model has
/// never seen give probability 0 (risk 1) and a warning. Each row is scored
/// on its own; linking several rows of the same individual is not done.
RiskResult risk_scores(const MarkovRiskModel& model, const Dataset& ds);

}  // namespace aidrin
