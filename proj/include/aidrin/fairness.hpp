#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "aidrin/dataset.hpp"

namespace aidrin {

struct GroupDistribution {
  std::string attribute;
  std::map<std::string, std::size_t> counts;
  std::map<std::string, double> proportions;
  double representation_rate = 1.0;  // min proportion / max proportion
  std::vector<std::string> warnings;
};

/// conditional[target][group] = Pr(Y = target | A = group).
using ConditionalTable = std::map<std::string, std::map<std::string, double>>;

struct StatisticalRateResult {
  std::string sensitive;
  std::string target;
  ConditionalTable conditional;
  std::map<std::string, double> per_target_rate;
  double overall = 1.0;  // min over targets
  std::vector<std::string> warnings;
};

struct TsdResult {
  std::string sensitive;
  std::string target;
  std::map<std::string, double> per_target;
  std::map<std::string, double> mu_per_target;
  std::vector<std::string> warnings;
};

enum class DistanceKind { Euclidean };

struct ImbalanceResult {
  std::string class_column;
  std::map<std::string, double> proportions;
  std::size_t minority_count = 0;  // classes with proportion < 1/K
  double id_score = 0.0;
  DistanceKind distance = DistanceKind::Euclidean;
};

GroupDistribution representation(const Dataset& ds, const std::string& sensitive);

/// Empirical Pr(Y | A) over rows where both columns are present. Groups
/// that only occur next to a missing target are reported in `warnings`.
ConditionalTable conditional_probabilities(const Dataset& ds, const std::string& sensitive,
                                           const std::string& target,
                                           std::vector<std::string>* warnings = nullptr);

StatisticalRateResult statistical_rate(const Dataset& ds, const std::string& sensitive,
                                       const std::string& target);

/// Target standard deviation: for each target label, the population standard
/// deviation of Pr(Y = y | A = a) across the N sensitive groups.
TsdResult tsd(const Dataset& ds, const std::string& sensitive, const std::string& target);

/// sqrt(mean((p - mean(p))^2)); exactly 0 when every entry is equal.
double target_std_dev(const std::vector<double>& group_probabilities);

ImbalanceResult imbalance_degree(const Dataset& ds, const std::string& class_column);

/// Imbalance degree of a class distribution (entries sum to 1, K >= 2):
/// d(p, e) / d(iota_m, e) + (m - 1), where e is uniform, m counts classes
/// below 1/K and iota_m has m zeros, K-m-1 entries of 1/K and one (m+1)/K.
double imbalance_degree(const std::vector<double>& proportions,
                        DistanceKind distance = DistanceKind::Euclidean);

}  // namespace aidrin
