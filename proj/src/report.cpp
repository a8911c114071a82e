#include "aidrin/report.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>

#include "aidrin/correlation.hpp"
#include "aidrin/error.hpp"
#include "aidrin/fairness.hpp"
#include "aidrin/forest.hpp"
#include "aidrin/preprocess.hpp"
#include "aidrin/privacy.hpp"
#include "aidrin/quality.hpp"
#include "aidrin/relevance.hpp"
#include "aidrin/serialize.hpp"
#include "aidrin/summary.hpp"

namespace aidrin {

using nlohmann::json;

namespace {

std::function<std::optional<std::string>(const SuiteParams&)> needs_nothing() {
  return [](const SuiteParams&) -> std::optional<std::string> { return std::nullopt; };
}

ChartSpec bar_chart(std::string title, std::string name, std::string y_label,
                    const std::map<std::string, double>& values) {
  ChartSpec spec;
  spec.kind = ChartKind::Bar;
  spec.title = std::move(title);
  spec.name = std::move(name);
  spec.y_label = std::move(y_label);
  Series s{"value", {}};
  for (const auto& [label, v] : values) {
    spec.labels.push_back(label);
    s.values.push_back(v);
  }
  spec.series.push_back(std::move(s));
  return spec;
}

ChartSpec heatmap(const CorrelationMatrix& m, std::string title, std::string name) {
  ChartSpec spec;
  spec.kind = ChartKind::Heatmap;
  spec.title = std::move(title);
  spec.name = std::move(name);
  spec.labels = m.labels;
  for (std::size_t i = 0; i < m.labels.size(); ++i) {
    Series s{m.labels[i], {}};
    for (const auto& v : m.values[i]) s.values.push_back(v ? *v : std::nan(""));
    spec.series.push_back(std::move(s));
  }
  return spec;
}

void append(std::vector<std::string>& to, const std::vector<std::string>& from) {
  to.insert(to.end(), from.begin(), from.end());
}

MetricOutput run_completeness(const Dataset& ds, const SuiteParams&) {
  auto r = completeness(ds);
  MetricOutput out{to_json_value(r), {}, {}};
  out.charts.push_back(bar_chart("Completeness per feature", "completeness", "fraction complete",
                                 r.per_column));
  return out;
}

MetricOutput run_outliers(const Dataset& ds, const SuiteParams& p) {
  auto r = outliers(ds, p.k);
  std::map<std::string, double> fractions;
  for (const auto& [name, f] : r.per_column) fractions[name] = f.fraction;
  fractions["(overall)"] = r.overall;
  MetricOutput out{to_json_value(r), {}, r.warnings};
  out.charts.push_back(bar_chart("Outlier fraction per numeric feature", "outliers",
                                 "fraction outside fence", fractions));
  return out;
}

MetricOutput run_duplicates(const Dataset& ds, const SuiteParams&) {
  return {to_json_value(duplicates(ds)), {}, {}};
}

MetricOutput run_fairness(const Dataset& ds, const SuiteParams& p) {
  MetricOutput out;
  auto rep = representation(ds, *p.sensitive);
  out.payload["representation"] = to_json_value(rep);
  append(out.warnings, rep.warnings);
  ChartSpec pie;
  pie.kind = ChartKind::Pie;
  pie.title = "Representation of " + *p.sensitive;
  pie.name = chart_file_stem("fairness", *p.sensitive);
  Series s{"proportion", {}};
  for (const auto& [group, prop] : rep.proportions) {
    pie.labels.push_back(group);
    s.values.push_back(prop);
  }
  pie.series.push_back(std::move(s));
  out.charts.push_back(std::move(pie));

  if (!p.target) {
    out.warnings.push_back("statistical rate and TSD need --target; only representation computed");
    return out;
  }
  auto sr = statistical_rate(ds, *p.sensitive, *p.target);
  auto t = tsd(ds, *p.sensitive, *p.target);
  out.payload["statistical_rate"] = to_json_value(sr);
  out.payload["tsd"] = to_json_value(t);
  append(out.warnings, sr.warnings);
  for (const auto& w : t.warnings)
    if (std::find(out.warnings.begin(), out.warnings.end(), w) == out.warnings.end())
      out.warnings.push_back(w);

  ChartSpec bars;
  bars.kind = ChartKind::Bar;
  bars.title = "Pr(" + *p.target + " | " + *p.sensitive + ")";
  bars.name = chart_file_stem("fairness", *p.sensitive + "_" + *p.target);
  bars.x_label = *p.sensitive;
  bars.y_label = "conditional probability";
  for (const auto& [group, unused] : sr.conditional.begin()->second) bars.labels.push_back(group);
  for (const auto& [label, by_group] : sr.conditional) {
    Series row{label, {}};
    for (const auto& group : bars.labels) {
      auto it = by_group.find(group);
      row.values.push_back(it == by_group.end() ? 0.0 : it->second);
    }
    bars.series.push_back(std::move(row));
  }
  out.charts.push_back(std::move(bars));
  return out;
}

std::vector<std::string> default_features(const Dataset& ds, const SuiteParams& p) {
  if (!p.features.empty()) return p.features;
  std::vector<std::string> features;
  for (const auto& name : ds.column_names())
    if (name != *p.target) features.push_back(name);
  return features;
}

MetricOutput run_feature_relevance(const Dataset& ds, const SuiteParams& p) {
  MetricOutput out;
  const auto features = default_features(ds, p);
  auto prepared = preprocess(ds, features, *p.target);
  ForestConfig fc;
  fc.tree_count = p.tree_count;
  fc.max_depth = p.max_depth;
  fc.seed = p.seed;
  auto forest = RandomForest::train(prepared.X, prepared.y, fc);
  if (forest.constant_target())
    out.warnings.push_back("target is constant after preprocessing; every attribution is 0");
  ShapleyConfig sc;
  sc.permutations = p.permutations;
  sc.background_size = p.background_size;
  sc.evaluation_rows = p.evaluation_rows;
  sc.seed = p.seed;
  auto shap = shapley_mc(forest, prepared.X, prepared.groups, sc);

  out.payload["feature_importance"] = to_json_value(shap);
  out.payload["feature_importance"]["config"]["tree_count"] = fc.tree_count;
  out.payload["feature_importance"]["config"]["max_depth"] = fc.max_depth;
  out.payload["feature_importance"]["config"]["background_size"] = sc.background_size;
  out.payload["feature_importance"]["config"]["evaluation_rows"] = sc.evaluation_rows;
  out.payload["preprocessing"] = to_json_value(prepared.plan);

  auto importance = bar_chart("Mean |Shapley value| per feature",
                              chart_file_stem("feature_relevance", "importance"),
                              "mean |phi|", shap.per_feature);
  importance.horizontal = true;
  out.charts.push_back(std::move(importance));
  for (auto& chart : relevance_charts(ds, features, *p.target)) out.charts.push_back(std::move(chart));
  return out;
}

MetricOutput run_correlations(const Dataset& ds, const SuiteParams&) {
  MetricOutput out;
  std::vector<std::string> failures;
  try {
    auto m = pearson_matrix(ds);
    out.payload["pearson"] = to_json_value(m);
    append(out.warnings, m.warnings);
    out.charts.push_back(heatmap(m, "Pearson correlation", "correlations_pearson"));
  } catch (const Error& e) {
    failures.push_back(std::string("pearson: ") + e.what());
  }
  try {
    auto m = theils_u_matrix(ds);
    out.payload["theils_u"] = to_json_value(m);
    append(out.warnings, m.warnings);
    out.charts.push_back(heatmap(m, "Theil's U (row given column)", "correlations_theils_u"));
  } catch (const Error& e) {
    failures.push_back(std::string("theils_u: ") + e.what());
  }
  if (failures.size() == 2) throw Error(failures[0] + "; " + failures[1]);
  append(out.warnings, failures);
  return out;
}

MetricOutput run_class_imbalance(const Dataset& ds, const SuiteParams& p) {
  auto r = imbalance_degree(ds, *p.class_column);
  MetricOutput out;
  out.payload["imbalance"] = to_json_value(r);
  out.charts.push_back(bar_chart("Class proportions of " + *p.class_column,
                                 chart_file_stem("class_imbalance", *p.class_column),
                                 "proportion", r.proportions));
  return out;
}

MetricOutput run_privacy(const Dataset& ds, const SuiteParams& p) {
  auto model = fit_markov(ds, p.quasi_identifiers);
  auto r = risk_scores(model, ds);
  MetricOutput out;
  out.payload["privacy_risk"] = to_json_value(r);
  out.warnings = r.warnings;
  std::string joined;
  for (const auto& a : p.quasi_identifiers) joined += (joined.empty() ? "" : "_") + a;
  ChartSpec hist;
  hist.kind = ChartKind::Histogram;
  hist.title = "Re-identification risk";
  hist.name = chart_file_stem("privacy", joined);
  hist.x_label = "risk";
  hist.y_label = "records";
  Series s{"records", {}};
  for (std::size_t i = 0; i < r.histogram.size(); ++i) {
    char label[32];
    std::snprintf(label, sizeof label, "%.1f-%.1f", static_cast<double>(i) / 10.0,
                  static_cast<double>(i + 1) / 10.0);
    hist.labels.emplace_back(label);
    s.values.push_back(static_cast<double>(r.histogram[i]));
  }
  hist.series.push_back(std::move(s));
  out.charts.push_back(std::move(hist));
  return out;
}

MetricOutput run_fair(const Dataset&, const SuiteParams& p) {
  auto score = fair_score(*p.metadata);
  MetricOutput out;
  out.payload["fair"] = to_json_value(score);
  out.charts.push_back(fair_pie_chart(score));
  return out;
}

MetricRegistry make_default_registry() {
  MetricRegistry r;
  r.push_back({"completeness", "fraction of non-missing cells", needs_nothing(), run_completeness});
  r.push_back({"outliers", "IQR fence outlier fractions", needs_nothing(), run_outliers});
  r.push_back({"duplicates", "duplicate row score", needs_nothing(), run_duplicates});
  r.push_back({"fairness", "representation rate, statistical rate, TSD",
               [](const SuiteParams& p) -> std::optional<std::string> {
                 if (!p.sensitive) return "--sensitive";
                 return std::nullopt;
               },
               run_fairness});
  r.push_back({"feature_relevance", "Shapley feature importance",
               [](const SuiteParams& p) -> std::optional<std::string> {
                 if (!p.target) return "--target";
                 return std::nullopt;
               },
               run_feature_relevance});
  r.push_back({"correlations", "Pearson and Theil's U matrices", needs_nothing(),
               run_correlations});
  r.push_back({"class_imbalance", "imbalance degree",
               [](const SuiteParams& p) -> std::optional<std::string> {
                 if (!p.class_column) return "--class-column";
                 return std::nullopt;
               },
               run_class_imbalance});
  r.push_back({"privacy", "Markov re-identification risk",
               [](const SuiteParams& p) -> std::optional<std::string> {
                 if (p.quasi_identifiers.empty()) return "--quasi-identifiers";
                 return std::nullopt;
               },
               run_privacy});
  r.push_back({"fair", "FAIR metadata compliance",
               [](const SuiteParams& p) -> std::optional<std::string> {
                 if (!p.metadata) return "--metadata";
                 return std::nullopt;
               },
               run_fair});
  return r;
}

json parameters_json(const SuiteParams& p) {
  json j = {{"k", p.k},
            {"seed", p.seed},
            {"permutations", p.permutations},
            {"background_size", p.background_size},
            {"evaluation_rows", p.evaluation_rows},
            {"tree_count", p.tree_count},
            {"max_depth", p.max_depth},
            {"features", p.features},
            {"quasi_identifiers", p.quasi_identifiers}};
  j["sensitive"] = p.sensitive ? json(*p.sensitive) : json(nullptr);
  j["target"] = p.target ? json(*p.target) : json(nullptr);
  j["class_column"] = p.class_column ? json(*p.class_column) : json(nullptr);
  j["metadata_dialect"] = p.metadata ? json(to_string(p.metadata->dialect)) : json(nullptr);
  return j;
}

}  // namespace

const MetricRegistry& default_registry() {
  static const MetricRegistry registry = make_default_registry();
  return registry;
}

const MetricDefinition* find_metric(const MetricRegistry& registry, std::string_view id) {
  for (const auto& m : registry)
    if (m.id == id) return &m;
  return nullptr;
}

std::vector<std::string> expand_selection(const std::vector<std::string>& requested,
                                          const SuiteParams& params,
                                          std::vector<std::string>& skipped,
                                          const MetricRegistry& registry) {
  std::vector<std::string> out;
  auto add = [&](const std::string& id) {
    if (std::find(out.begin(), out.end(), id) == out.end()) out.push_back(id);
  };
  for (const auto& id : requested) {
    if (id != "all") {
      add(id);
      continue;
    }
    for (const auto& m : registry) {
      if (auto flag = m.missing_parameter(params))
        skipped.push_back(m.id + ": skipped, requires " + *flag);
      else
        add(m.id);
    }
  }
  return out;
}

MetricReport run_suite(const Dataset& ds, const std::vector<std::string>& selections,
                       const SuiteParams& params, const MetricRegistry& registry) {
  MetricReport report;
  report.dataset_name = ds.name();
  report.created_at = utc_timestamp();
  report.parameters = parameters_json(params);
  if (selections.empty()) report.warnings.push_back("no metrics selected");

  for (std::size_t i = 0; i < ds.column_count(); ++i)
    for (const auto& w : ds.column(i).warnings())
      report.warnings.push_back("column \"" + ds.column(i).name() + "\": " + w);
  if (!ds.empty()) report.summary = to_json_value(summarize(ds));

  for (const auto& id : selections) {
    report.selections.push_back(id);
    const MetricDefinition* metric = find_metric(registry, id);
    if (!metric) {
      report.warnings.push_back(id + ": unknown metric");
      continue;
    }
    if (auto flag = metric->missing_parameter(params)) {
      report.warnings.push_back(id + ": not computed, requires " + *flag);
      continue;
    }
    const auto start = std::chrono::steady_clock::now();
    try {
      MetricOutput out = metric->compute(ds, params);
      for (auto& chart : out.charts) {
        try {
          validate(chart);
          report.charts.push_back(std::move(chart));
        } catch (const Error& e) {
          report.warnings.push_back(id + ": chart skipped: " + e.what());
        }
      }
      for (const auto& w : out.warnings) report.warnings.push_back(id + ": " + w);
      report.results[id] = std::move(out.payload);
    } catch (const std::exception& e) {
      report.warnings.push_back(id + ": failed: " + e.what());
    }
    report.timings[id] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  return report;
}

void canonicalize(json& doc) {
  if (doc.is_number_float()) {
    const double v = doc.get<double>();
    if (!std::isfinite(v)) {
      doc = nullptr;
      return;
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    doc = std::strtod(buf, nullptr);
  } else if (doc.is_structured()) {
    for (auto& child : doc) canonicalize(child);
  }
}

json report_document(const MetricReport& report, const JsonOptions& options) {
  json doc = {{"schema", kReportSchema},
              {"dataset", report.dataset_name},
              {"selections", report.selections},
              {"parameters", report.parameters},
              {"results", json::object()},
              {"warnings", report.warnings}};
  for (const auto& [id, payload] : report.results) doc["results"][id] = payload;
  doc["summary"] = report.summary ? *report.summary : json(nullptr);
  json charts = json::array();
  for (const auto& c : report.charts) charts.push_back(c.name + ".svg");
  doc["charts"] = std::move(charts);
  if (options.include_volatile) {
    doc["created_at"] = report.created_at;
    doc["timings"] = report.timings;
  }
  canonicalize(doc);
  return doc;
}

std::string to_json(const MetricReport& report, const JsonOptions& options) {
  return report_document(report, options).dump(options.indent) + "\n";
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace aidrin
