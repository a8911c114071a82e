#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "aidrin/dataset.hpp"
#include "aidrin/error.hpp"
#include "aidrin/fair.hpp"
#include "aidrin/report.hpp"
#include "aidrin/serialize.hpp"
#include "aidrin/summary.hpp"
#include "aidrin/svg.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitClean = 0;
constexpr int kExitWarnings = 1;
constexpr int kExitFatal = 2;

struct LoadFlags {
  std::string input;
  std::vector<std::string> missing_tokens;
  char delimiter = ',';
};

struct InspectFlags {
  std::vector<std::string> metrics;
  std::string sensitive, target, class_column;
  std::vector<std::string> features, quasi_identifiers;
  std::string metadata;
  std::string dialect = "dcat";
  double k = 1.5;
  std::uint64_t seed = 42;
  std::size_t permutations = 128;
  std::size_t trees = 100;
  std::string out;
  bool charts = false;
};

struct FaircheckFlags {
  std::string metadata;
  std::string dialect = "dcat";
  std::string format = "text";
  std::string out;
  bool charts = false;
};

void add_load_options(CLI::App& cmd, LoadFlags& flags) {
  cmd.add_option("-i,--input", flags.input, "CSV file to analyse")->required();
  cmd.add_option("--missing-tokens", flags.missing_tokens,
                 "cell values treated as missing (comma separated)")
      ->delimiter(',');
  cmd.add_option("--delimiter", flags.delimiter, "field separator");
}

aidrin::Dataset load(const LoadFlags& flags) {
  aidrin::CsvOptions options;
  options.delimiter = flags.delimiter;
  if (!flags.missing_tokens.empty()) options.missing_tokens = flags.missing_tokens;
  return aidrin::load_csv(flags.input, options);
}

fs::path output_dir(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("AIDRIN_OUT"); env && *env) return env;
  return fs::current_path();
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw aidrin::Error("cannot write " + path.string());
}

std::optional<std::string> non_empty(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return s;
}

int cmd_inspect(const LoadFlags& load_flags, const InspectFlags& f) {
  aidrin::SuiteParams params;
  params.sensitive = non_empty(f.sensitive);
  params.target = non_empty(f.target);
  params.class_column = non_empty(f.class_column);
  params.features = f.features;
  params.quasi_identifiers = f.quasi_identifiers;
  params.k = f.k;
  params.seed = f.seed;
  params.permutations = f.permutations;
  params.tree_count = f.trees;
  if (!f.metadata.empty())
    params.metadata = aidrin::parse_metadata(f.metadata, aidrin::parse_dialect(f.dialect));

  const aidrin::Dataset ds = load(load_flags);

  std::vector<std::string> skipped;
  const auto selections = aidrin::expand_selection(f.metrics, params, skipped);
  for (const auto& id : selections) {
    const auto* metric = aidrin::find_metric(aidrin::default_registry(), id);
    if (metric == nullptr) {
      std::cerr << "error: unknown metric '" << id << "'\n";
    } else if (auto flag = metric->missing_parameter(params)) {
      std::cerr << "error: metric '" << id << "' requires " << *flag << "\n";
    }
  }

  aidrin::MetricReport report = aidrin::run_suite(ds, selections, params);
  report.warnings.insert(report.warnings.begin(), skipped.begin(), skipped.end());

  const fs::path dir = output_dir(f.out);
  fs::create_directories(dir);
  write_text(dir / "report.json", aidrin::to_json(report, {.include_volatile = false}));
  nlohmann::json run = {{"created_at", report.created_at}, {"timings", report.timings}};
  write_text(dir / "run.json", run.dump(2) + "\n");

  if (f.charts) {
    for (const auto& chart : report.charts) {
      try {
        aidrin::write_svg(chart, dir / (chart.name + ".svg"));
      } catch (const aidrin::Error& e) {
        report.warnings.push_back(std::string("chart ") + chart.name + ": " + e.what());
      }
    }
  }

  for (const auto& w : report.warnings) std::cerr << "warning: " << w << "\n";
  std::cerr << "wrote " << (dir / "report.json").string() << "\n";
  return report.warnings.empty() ? kExitClean : kExitWarnings;
}

void print_summary_table(const aidrin::Dataset& ds, const aidrin::DatasetSummary& s) {
  std::cout << ds.name() << ": " << s.rows << " rows × " << s.cols << " columns ("
            << s.numeric_count << " numeric, " << s.categorical_count << " categorical)\n\n";
  std::size_t width = 6;
  for (const auto& c : s.columns) width = std::max(width, c.name.size());
  auto pad = [](std::string text, std::size_t w) {
    if (text.size() < w) text.append(w - text.size(), ' ');
    return text;
  };
  std::cout << pad("column", width) << "  " << pad("kind", 11) << "  " << pad("missing", 8)
            << "  details\n";
  char buf[256];
  for (const auto& c : s.columns) {
    std::string details;
    if (c.numeric) {
      const auto& n = *c.numeric;
      std::snprintf(buf, sizeof buf, "min %.4g  p25 %.4g  median %.4g  p75 %.4g  max %.4g  mean %.4g  sd %.4g",
                    n.min, n.p25, n.p50, n.p75, n.max, n.mean, n.std_dev);
      details = buf;
    } else if (c.categorical) {
      details = std::to_string(c.categorical->distinct_count) + " distinct";
      const auto& top = c.categorical->top_values;
      for (std::size_t i = 0; i < std::min<std::size_t>(top.size(), 3); ++i)
        details += (i == 0 ? "; " : ", ") + top[i].first + " (" + std::to_string(top[i].second) + ")";
    }
    std::cout << pad(c.name, width) << "  " << pad(std::string(aidrin::to_string(c.kind)), 11)
              << "  " << pad(std::to_string(c.missing), 8) << "  " << details << "\n";
  }
}

int cmd_summarize(const LoadFlags& load_flags, const std::string& format) {
  const aidrin::Dataset ds = load(load_flags);
  const auto summary = aidrin::summarize(ds);
  if (format == "json") {
    auto doc = aidrin::to_json_value(summary);
    aidrin::canonicalize(doc);
    std::cout << doc.dump(2) << "\n";
  } else {
    print_summary_table(ds, summary);
  }
  bool warned = false;
  for (std::size_t i = 0; i < ds.column_count(); ++i)
    for (const auto& w : ds.column(i).warnings()) {
      std::cerr << "warning: column \"" << ds.column(i).name() << "\": " << w << "\n";
      warned = true;
    }
  return warned ? kExitWarnings : kExitClean;
}

int cmd_faircheck(const FaircheckFlags& f) {
  const auto catalog = aidrin::parse_metadata(f.metadata, aidrin::parse_dialect(f.dialect));
  const auto score = aidrin::fair_score(catalog);
  if (f.format == "json") {
    auto doc = aidrin::to_json_value(score);
    aidrin::canonicalize(doc);
    std::cout << doc.dump(2) << "\n";
  } else {
    for (auto p : aidrin::kPrinciples) {
      const auto& s = score.of(p);
      std::cout << aidrin::to_string(p) << ": " << s.fulfilled << "/" << s.total << "\n";
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "score: %.1f%%\n", score.score_percent);
    std::cout << buf;
  }
  if (f.charts) {
    const fs::path dir = output_dir(f.out);
    fs::create_directories(dir);
    const auto chart = aidrin::fair_pie_chart(score);
    aidrin::write_svg(chart, dir / (chart.name + ".svg"));
  }
  return kExitClean;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"AI data readiness inspector"};
  app.require_subcommand(1);

  LoadFlags inspect_load, summarize_load;
  InspectFlags inspect;
  FaircheckFlags faircheck;
  std::string summarize_format = "text";

  auto* inspect_cmd = app.add_subcommand("inspect", "run readiness metrics and write report.json");
  add_load_options(*inspect_cmd, inspect_load);
  inspect_cmd->add_option("-m,--metrics", inspect.metrics, "metric ids or 'all' (comma separated)")
      ->delimiter(',')
      ->required();
  inspect_cmd->add_option("--sensitive", inspect.sensitive, "sensitive attribute column");
  inspect_cmd->add_option("--target", inspect.target, "target column");
  inspect_cmd->add_option("--features", inspect.features, "feature columns (comma separated)")
      ->delimiter(',');
  inspect_cmd
      ->add_option("--quasi-identifiers", inspect.quasi_identifiers,
                   "quasi-identifier columns, in sequence order (comma separated)")
      ->delimiter(',');
  inspect_cmd->add_option("--class-column", inspect.class_column, "column for class imbalance");
  inspect_cmd->add_option("--metadata", inspect.metadata, "metadata JSON document");
  inspect_cmd->add_option("--dialect", inspect.dialect, "metadata dialect: dcat or datacite");
  inspect_cmd->add_option("--k", inspect.k, "IQR fence multiplier")->check(CLI::PositiveNumber);
  inspect_cmd->add_option("--seed", inspect.seed, "seed for every random choice");
  inspect_cmd->add_option("--permutations", inspect.permutations,
                          "Shapley permutations per evaluated row")
      ->check(CLI::PositiveNumber);
  inspect_cmd->add_option("--trees", inspect.trees, "random forest size")
      ->check(CLI::PositiveNumber);
  inspect_cmd->add_option("-o,--out", inspect.out, "output directory (default: $AIDRIN_OUT or .)");
  inspect_cmd->add_flag("--charts", inspect.charts, "also write SVG charts");

  auto* summarize_cmd = app.add_subcommand("summarize", "print dataset dimensions and statistics");
  add_load_options(*summarize_cmd, summarize_load);
  summarize_cmd->add_option("--format", summarize_format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));

  auto* faircheck_cmd = app.add_subcommand("faircheck", "score a metadata document");
  faircheck_cmd->add_option("--metadata", faircheck.metadata, "metadata JSON document")->required();
  faircheck_cmd->add_option("--dialect", faircheck.dialect, "dcat or datacite");
  faircheck_cmd->add_option("--format", faircheck.format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));
  faircheck_cmd->add_option("-o,--out", faircheck.out, "chart directory (default: $AIDRIN_OUT or .)");
  faircheck_cmd->add_flag("--charts", faircheck.charts, "write the FAIR pie chart");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitClean : kExitFatal;
  }

  try {
    if (*inspect_cmd) return cmd_inspect(inspect_load, inspect);
    if (*summarize_cmd) return cmd_summarize(summarize_load, summarize_format);
    if (*faircheck_cmd) return cmd_faircheck(faircheck);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFatal;
  }
  return kExitFatal;
}
