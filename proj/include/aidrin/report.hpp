#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "aidrin/chart.hpp"
#include "aidrin/dataset.hpp"
#include "aidrin/fair.hpp"
#include "aidrin/shapley.hpp"

namespace aidrin {

inline constexpr const char* kReportSchema = "aidrin-report/1";

/// Column and tuning parameters shared by all metrics of a suite run.
struct SuiteParams {
  std::optional<std::string> sensitive;
  std::optional<std::string> target;
  std::vector<std::string> features;
  std::vector<std::string> quasi_identifiers;
  std::optional<std::string> class_column;
  double k = 1.5;
  std::uint64_t seed = 42;
  std::size_t permutations = 128;
  std::size_t background_size = 100;
  std::size_t evaluation_rows = 100;
  std::size_t tree_count = 100;
  std::size_t max_depth = 8;
  std::optional<MetadataCatalog> metadata;
};

/// What one metric contributes to a report.
struct MetricOutput {
  nlohmann::json payload;
  std::vector<ChartSpec> charts;
  std::vector<std::string> warnings;
};

/// A metric computation. Throwing aidrin::Error (or any std::exception)
/// marks the metric as failed without affecting the others.
using MetricFn = std::function<MetricOutput(const Dataset&, const SuiteParams&)>;

struct MetricDefinition {
  std::string id;
  std::string description;
  /// Returns the name of the first missing parameter (as a CLI flag), if any.
  std::function<std::optional<std::string>(const SuiteParams&)> missing_parameter;
  MetricFn compute;
};

using MetricRegistry = std::vector<MetricDefinition>;

/// completeness, outliers, duplicates, fairness, feature_relevance,
/// correlations, class_imbalance, privacy, fair.
const MetricRegistry& default_registry();
const MetricDefinition* find_metric(const MetricRegistry& registry, std::string_view id);

struct MetricReport {
  std::string dataset_name;
  std::string created_at;  // ISO-8601 UTC
  std::vector<std::string> selections;
  nlohmann::json parameters = nlohmann::json::object();
  std::map<std::string, nlohmann::json> results;
  std::vector<std::string> warnings;
  std::map<std::string, double> timings;  // seconds, per computed metric
  std::optional<nlohmann::json> summary;
  std::vector<ChartSpec> charts;
};

/// Runs each selected metric independently; failures become warnings.
/// Metric ids not present in `registry` are reported as warnings too.
MetricReport run_suite(const Dataset& ds, const std::vector<std::string>& selections,
                       const SuiteParams& params,
                       const MetricRegistry& registry = default_registry());

/// Expands "all" into every registry metric whose parameters are present;
/// the skipped ones are appended to `skipped` as warnings.
std::vector<std::string> expand_selection(const std::vector<std::string>& requested,
                                          const SuiteParams& params,
                                          std::vector<std::string>& skipped,
                                          const MetricRegistry& registry = default_registry());

struct JsonOptions {
  /// created_at and timings vary between runs; leave them out for
  /// byte-reproducible output.
  bool include_volatile = true;
  int indent = 2;
};

/// Canonical form: keys sorted, reals rounded to 12 significant digits,
/// absent values as null.
std::string to_json(const MetricReport& report, const JsonOptions& options = {});
nlohmann::json report_document(const MetricReport& report, const JsonOptions& options = {});

/// Rounds every real in `doc` to 12 significant digits, in place.
void canonicalize(nlohmann::json& doc);

std::string utc_timestamp();

}  // namespace aidrin
