#pragma once

#include <json.hpp>

#include "aidrin/correlation.hpp"
#include "aidrin/fair.hpp"
#include "aidrin/fairness.hpp"
#include "aidrin/forest.hpp"
#include "aidrin/preprocess.hpp"
#include "aidrin/privacy.hpp"
#include "aidrin/quality.hpp"
#include "aidrin/shapley.hpp"
#include "aidrin/summary.hpp"

// JSON payloads of the report schema.
namespace aidrin {

nlohmann::json to_json_value(const DatasetSummary& s);
nlohmann::json to_json_value(const CompletenessResult& r);
nlohmann::json to_json_value(const OutlierResult& r);
nlohmann::json to_json_value(const DuplicateResult& r);
nlohmann::json to_json_value(const CorrelationMatrix& m);
nlohmann::json to_json_value(const GroupDistribution& g);
nlohmann::json to_json_value(const StatisticalRateResult& r);
nlohmann::json to_json_value(const TsdResult& r);
nlohmann::json to_json_value(const ImbalanceResult& r);
nlohmann::json to_json_value(const RiskResult& r);
nlohmann::json to_json_value(const PreprocessPlan& p);
nlohmann::json to_json_value(const ShapleyResult& r);
nlohmann::json to_json_value(const FairScore& s);
nlohmann::json to_json_value(const ChartSpec& c);

}  // namespace aidrin
