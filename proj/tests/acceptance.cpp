// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero when any criterion fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "aidrin/correlation.hpp"
#include "aidrin/fair.hpp"
#include "aidrin/fairness.hpp"
#include "aidrin/forest.hpp"
#include "aidrin/privacy.hpp"
#include "aidrin/quality.hpp"
#include "aidrin/random.hpp"
#include "aidrin/report.hpp"
#include "aidrin/shapley.hpp"
#include "support.hpp"

namespace fs = std::filesystem;
using namespace aidrin;
using aidrin::testing::cat;
using Clock = std::chrono::steady_clock;

namespace {

// Tolerances and budgets.
constexpr double kSavingLo = 0.80, kSavingHi = 0.83;
constexpr double kCheckingLo = 0.59, kCheckingHi = 0.62;
constexpr double kCompletenessSeconds = 1.0;
constexpr double kMajority = 0.337, kMinority = 0.012, kProportionTol = 0.001;
constexpr double kImbalance = 4.49, kImbalanceTol = 0.02;
constexpr double kHousingRisk = 0.45, kHousingRiskTol = 0.01;
constexpr double kOutlierCeiling = 0.15, kOutlierHigh = 0.35, kOutlierHighTol = 0.03;
constexpr double kSmallSuiteSeconds = 5.0;
constexpr double kLargeSuiteSeconds = 60.0;
constexpr std::size_t kLargeRows = 1'500'000;
constexpr std::size_t kShapleyModels = 50;
constexpr double kExactEfficiencyTol = 1e-9;
constexpr double kStdErrors = 3.0;
constexpr double kDummyShare = 0.02;
constexpr std::size_t kTheilPairs = 1000;
constexpr double kTheilTol = 1e-9;
constexpr std::size_t kTsdTables = 100;
constexpr double kTsdTol = 1e-12;
constexpr std::size_t kFairSequences = 1000;
constexpr std::uint64_t kFuzzSeed = 20240601;

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& title, const std::function<Outcome()>& check) {
  Outcome o;
  try {
    o = check();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  if (!o.pass) ++failures;
  std::cout << "criterion " << id << ": " << (o.pass ? "PASS" : "FAIL") << "  " << title << "  ["
            << o.detail << "]" << std::endl;
}

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

const Dataset& credit() {
  static const Dataset ds = load_csv(aidrin::testing::data_path("german_credit.csv"));
  return ds;
}

Outcome completeness_check() {
  const auto t = Clock::now();
  const auto r = completeness(credit());
  const double elapsed = seconds_since(t);
  const double saving = r.per_column.at("Saving accounts");
  const double checking = r.per_column.at("Checking account");
  bool others = true;
  for (const auto& [name, v] : r.per_column)
    if (name != "Saving accounts" && name != "Checking account") others = others && v == 1.0;
  const bool pass = saving >= kSavingLo && saving <= kSavingHi && checking >= kCheckingLo &&
                    checking <= kCheckingHi && others && elapsed < kCompletenessSeconds;
  return {pass, "saving " + fmt("%.3f", saving) + ", checking " + fmt("%.3f", checking) +
                    ", others complete " + (others ? "yes" : "no") + ", " + fmt("%.4f s", elapsed)};
}

Outcome duplicates_check() {
  const auto r = duplicates(credit());
  return {r.score == 0.0, "score " + fmt("%g", r.score)};
}

Outcome purpose_proportions_check() {
  const auto r = imbalance_degree(credit(), "Purpose");
  double hi = 0, lo = 1;
  for (const auto& [_, p] : r.proportions) {
    hi = std::max(hi, p);
    lo = std::min(lo, p);
  }
  const bool pass = std::abs(hi - kMajority) <= kProportionTol && std::abs(lo - kMinority) <= kProportionTol;
  return {pass, "majority " + fmt("%.4f", hi) + ", minority " + fmt("%.4f", lo)};
}

Outcome imbalance_check() {
  const auto r = imbalance_degree(credit(), "Purpose");
  const bool pass = std::abs(r.id_score - kImbalance) <= kImbalanceTol && std::floor(r.id_score) == 4.0;
  return {pass, "ID " + fmt("%.4f", r.id_score)};
}

Outcome housing_risk_check() {
  const auto r = risk_scores(fit_markov(credit(), {"Housing"}), credit());
  return {std::abs(r.mean_risk - kHousingRisk) <= kHousingRiskTol, "mean risk " + fmt("%.4f", r.mean_risk)};
}

Outcome outlier_check() {
  const auto r = outliers(credit());
  std::size_t high = 0, low = 0;
  std::string detail;
  for (const auto& [name, f] : r.per_column) {
    if (f.fraction < kOutlierCeiling) ++low;
    else if (std::abs(f.fraction - kOutlierHigh) <= kOutlierHighTol) ++high;
    detail += name + " " + fmt("%.3f", f.fraction) + "; ";
  }
  return {high == 1 && low + 1 == r.per_column.size(), detail};
}

SuiteParams credit_params(std::uint64_t seed) {
  SuiteParams p;
  p.sensitive = "Sex";
  p.target = "Risk";
  p.class_column = "Purpose";
  p.quasi_identifiers = {"Housing"};
  p.seed = seed;
  return p;
}

// 13 sensor-like numeric columns and 4 categorical ones; the target depends
// on a few sensors so the forest has something to find.
Dataset synthetic(std::size_t rows) {
  Rng rng(derive_seed(kFuzzSeed, 99));
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<Column> cols;
  std::vector<std::vector<double>> sensors(13, std::vector<double>(rows));
  for (std::size_t c = 0; c < 13; ++c)
    for (std::size_t r = 0; r < rows; ++r)
      sensors[c][r] = std::round((10.0 * static_cast<double>(c) + gauss(rng) * (1.0 + static_cast<double>(c % 3))) * 1000.0) / 1000.0;
  std::vector<std::optional<std::string>> site(rows), mode(rows), shift(rows), status(rows);
  const char* sites[] = {"north", "south", "east"};
  const char* modes[] = {"idle", "load", "ramp", "service"};
  const char* shifts[] = {"day", "night", "swing"};
  for (std::size_t r = 0; r < rows; ++r) {
    site[r] = sites[uniform_index(rng, 3)];
    mode[r] = modes[uniform_index(rng, 4)];
    shift[r] = shifts[uniform_index(rng, 3)];
    const double score = sensors[0][r] - 0.5 * sensors[3][r] + (sensors[7][r] > 70 ? 3.0 : 0.0) + gauss(rng);
    status[r] = score > 0.0 ? "fault" : "ok";
  }
  for (std::size_t c = 0; c < 13; ++c) {
    std::vector<std::optional<double>> v(sensors[c].begin(), sensors[c].end());
    std::vector<double>().swap(sensors[c]);
    cols.push_back(Column::numeric("sensor_" + std::to_string(c), std::move(v)));
  }
  cols.push_back(Column::categorical("site", std::move(site)));
  cols.push_back(Column::categorical("mode", std::move(mode)));
  cols.push_back(Column::categorical("shift", std::move(shift)));
  cols.push_back(Column::categorical("status", std::move(status)));
  return Dataset("synthetic", std::move(cols));
}

Outcome runtime_check() {
  const std::vector<std::string> eight = {"completeness", "outliers",          "duplicates",
                                          "fairness",     "feature_relevance", "correlations",
                                          "class_imbalance", "privacy"};
  auto t = Clock::now();
  const auto small = run_suite(credit(), eight, credit_params(42));
  const double small_s = seconds_since(t);

  const Dataset big = synthetic(kLargeRows);
  SuiteParams p;
  p.sensitive = "site";
  p.target = "status";
  p.class_column = "mode";
  std::vector<std::string> seven(eight.begin(), eight.end() - 1);
  t = Clock::now();
  const auto large = run_suite(big, seven, p);
  const double large_s = seconds_since(t);

  const bool pass = small.results.size() == 8 && large.results.size() == 7 &&
                    small_s < kSmallSuiteSeconds && large_s < kLargeSuiteSeconds;
  std::string timings;
  for (const auto& [id, s] : large.timings) timings += id + " " + fmt("%.1f", s) + "; ";
  return {pass, "credit suite " + fmt("%.2f s", small_s) + " (" + std::to_string(small.results.size()) +
                    " results), synthetic 1.5M x 17 suite " + fmt("%.1f s", large_s) + " (" +
                    std::to_string(large.results.size()) + " results: " + timings + ")"};
}

Outcome shapley_check() {
  std::size_t efficiency_bad = 0, mc_bad = 0, dummy_bad = 0, comparisons = 0;
  double worst_z = 0;
  for (std::size_t m = 0; m < kShapleyModels; ++m) {
    Rng rng(derive_seed(kFuzzSeed, 1000 + m));
    const std::size_t active = 1 + uniform_index(rng, 5);
    const std::size_t d = active + 1;  // last column is a constant dummy
    const std::size_t n = 200;
    std::vector<std::string> names;
    for (std::size_t j = 0; j < d; ++j) names.push_back("f" + std::to_string(j));
    DesignMatrix X(n, names);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> w(active);
    for (auto& v : w) v = u(rng) * 2.0;
    std::vector<double> y(n);
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t j = 0; j < active; ++j) X.at(r, j) = u(rng);
      X.at(r, active) = 1.0;
      double v = 0;
      for (std::size_t j = 0; j < active; ++j) v += w[j] * X.at(r, j);
      if (active > 1) v += X.at(r, 0) * X.at(r, 1);
      y[r] = v + 0.1 * u(rng);
    }
    const auto forest = RandomForest::train(X, y, {.tree_count = 10, .max_depth = 4, .seed = m});
    const auto groups = FeatureGroups::identity(names);
    const ShapleyConfig cfg{.permutations = 1000, .background_size = 30, .evaluation_rows = 4, .seed = m};
    const auto exact = shapley_exact(forest, X, groups, cfg);
    const auto mc = shapley_mc(forest, X, groups, cfg);

    for (double res : exact.efficiency_residual)
      if (res > kExactEfficiencyTol) ++efficiency_bad;

    // Compare the mean signed attribution over evaluated rows per feature.
    const auto rows = static_cast<double>(exact.rows.size());
    for (std::size_t j = 0; j < d; ++j) {
      double e = 0, a = 0, var = 0;
      for (std::size_t i = 0; i < exact.rows.size(); ++i) {
        e += exact.phi[i][j] / rows;
        a += mc.phi[i][j] / rows;
        var += mc.std_error[i][j] * mc.std_error[i][j];
      }
      const double se = std::sqrt(var) / rows;
      ++comparisons;
      const double diff = std::abs(a - e);
      if (se > 0) worst_z = std::max(worst_z, diff / se);
      if (diff > kStdErrors * se + 1e-12) ++mc_bad;
    }
    const double top = *std::max_element(exact.mean_abs.begin(), exact.mean_abs.end());
    if (exact.mean_abs[active] > kDummyShare * top || mc.mean_abs[active] > kDummyShare * top) ++dummy_bad;
  }
  const bool pass = efficiency_bad == 0 && mc_bad == 0 && dummy_bad == 0;
  return {pass, std::to_string(kShapleyModels) + " models; efficiency violations " +
                    std::to_string(efficiency_bad) + ", MC outside 3 SE " + std::to_string(mc_bad) +
                    "/" + std::to_string(comparisons) + " (max |z| " + fmt("%.2f", worst_z) +
                    "), dummy violations " + std::to_string(dummy_bad)};
}

Outcome theils_u_check() {
  Rng rng(derive_seed(kFuzzSeed, 2));
  std::size_t out_of_range = 0, det_bad = 0, ind_bad = 0;
  double worst_det = 0, worst_ind = 0;
  for (std::size_t t = 0; t < kTheilPairs; ++t) {
    const std::size_t n = 1 + uniform_index(rng, 200);
    const auto xs = aidrin::testing::random_labels(rng, n, 1 + uniform_index(rng, 8), "x");
    const auto ys = aidrin::testing::random_labels(rng, n, 1 + uniform_index(rng, 8), "y");
    const double u = theils_u(cat("x", xs), cat("y", ys));
    if (!(u >= 0.0 && u <= 1.0)) ++out_of_range;

    // X is a function of Y.
    const std::size_t ky = 1 + uniform_index(rng, 8), kx = 1 + uniform_index(rng, 4);
    std::vector<std::size_t> f(ky);
    for (auto& v : f) v = uniform_index(rng, kx);
    std::vector<std::string> dy, dx;
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t v = uniform_index(rng, ky);
      dy.push_back("y" + std::to_string(v));
      dx.push_back("x" + std::to_string(f[v]));
    }
    const double det = theils_u(cat("x", dx), cat("y", dy));
    worst_det = std::max(worst_det, std::abs(det - 1.0));
    if (std::abs(det - 1.0) > kTheilTol) ++det_bad;

    // Every (x, y) combination equally often, rows shuffled.
    const std::size_t a = 2 + uniform_index(rng, 4), b = 2 + uniform_index(rng, 4), reps = 1 + uniform_index(rng, 5);
    std::vector<std::pair<std::string, std::string>> cells;
    for (std::size_t i = 0; i < a; ++i)
      for (std::size_t j = 0; j < b; ++j)
        for (std::size_t r = 0; r < reps; ++r) cells.emplace_back("x" + std::to_string(i), "y" + std::to_string(j));
    shuffle(std::span(cells), rng);
    std::vector<std::string> px, py;
    for (auto& [x, y] : cells) {
      px.push_back(x);
      py.push_back(y);
    }
    for (double v : {theils_u(cat("x", px), cat("y", py)), theils_u(cat("y", py), cat("x", px))}) {
      worst_ind = std::max(worst_ind, std::abs(v));
      if (std::abs(v) > kTheilTol) ++ind_bad;
    }
  }
  return {out_of_range == 0 && det_bad == 0 && ind_bad == 0,
          std::to_string(kTheilPairs) + " random pairs, out of range " + std::to_string(out_of_range) +
              "; deterministic max |U-1| " + fmt("%.2e", worst_det) + "; independent max |U| " +
              fmt("%.2e", worst_ind)};
}

Outcome tsd_check() {
  Rng rng(derive_seed(kFuzzSeed, 3));
  double worst = 0;
  std::size_t equal_bad = 0;
  for (std::size_t t = 0; t < kTsdTables; ++t) {
    const std::size_t groups = 2 + uniform_index(rng, 5), labels = 2 + uniform_index(rng, 4);
    std::vector<std::vector<std::size_t>> counts(groups, std::vector<std::size_t>(labels));
    for (auto& row : counts)
      for (auto& c : row) c = 1 + uniform_index(rng, 40);
    auto build = [&](const std::vector<std::vector<std::size_t>>& table) {
      std::vector<std::string> a, y;
      for (std::size_t g = 0; g < table.size(); ++g)
        for (std::size_t l = 0; l < table[g].size(); ++l)
          for (std::size_t k = 0; k < table[g][l]; ++k) {
            a.push_back("g" + std::to_string(g));
            y.push_back("y" + std::to_string(l));
          }
      return Dataset("t", {cat("A", a), cat("Y", y)});
    };
    const auto r = tsd(build(counts), "A", "Y");
    for (std::size_t l = 0; l < labels; ++l) {
      // sqrt((1/N) sum_n (p_n - mu)^2) with p_n = count(n, l) / count(n)
      std::vector<double> p;
      for (const auto& row : counts) {
        std::size_t total = 0;
        for (auto c : row) total += c;
        p.push_back(static_cast<double>(row[l]) / static_cast<double>(total));
      }
      double mu = 0;
      for (double v : p) mu += v / static_cast<double>(p.size());
      double ss = 0;
      for (double v : p) ss += (v - mu) * (v - mu);
      const double oracle = std::sqrt(ss / static_cast<double>(p.size()));
      worst = std::max(worst, std::abs(r.per_target.at("y" + std::to_string(l)) - oracle));
    }
    // Same label mix in every group, different group sizes.
    std::vector<std::vector<std::size_t>> equal(groups, counts[0]);
    for (std::size_t g = 0; g < groups; ++g)
      for (auto& c : equal[g]) c *= 1 + g;
    for (const auto& [_, v] : tsd(build(equal), "A", "Y").per_target)
      if (v != 0.0) ++equal_bad;
  }
  return {worst <= kTsdTol && equal_bad == 0,
          std::to_string(kTsdTables) + " tables, max oracle gap " + fmt("%.2e", worst) +
              ", non-zero TSD on equal tables " + std::to_string(equal_bad)};
}

Outcome fair_check() {
  nlohmann::json full = nlohmann::json::object();
  std::vector<std::string> keys;
  for (const auto& row : check_table(Dialect::DCAT)) {
    full[std::string(row.element)] = "value";
    keys.emplace_back(row.element);
  }
  const auto full_score = fair_score(catalog_from_json(full, Dialect::DCAT));
  const auto empty_score = fair_score(catalog_from_json(nlohmann::json::object(), Dialect::DCAT));
  const bool totals = full_score.of(Principle::Findable).total == 6 &&
                      full_score.of(Principle::Accessible).total == 5 &&
                      full_score.of(Principle::Interoperable).total == 3 &&
                      full_score.of(Principle::Reusable).total == 4;
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  keys.insert(keys.end(), {"modified", "spatial", "temporal", "contactPoint"});

  Rng rng(derive_seed(kFuzzSeed, 4));
  std::size_t drops = 0;
  for (std::size_t s = 0; s < kFairSequences; ++s) {
    shuffle(std::span(keys), rng);
    nlohmann::json doc = nlohmann::json::object();
    double last = 0.0;
    for (const auto& k : keys) {
      doc[k] = "v";
      const double now = fair_score(catalog_from_json(doc, Dialect::DCAT)).score_percent;
      if (now < last) ++drops;
      last = now;
    }
  }
  const bool pass = full_score.score_percent == 100.0 && empty_score.score_percent == 0.0 && totals && drops == 0;
  return {pass, "full " + fmt("%.1f%%", full_score.score_percent) + ", empty " +
                    fmt("%.1f%%", empty_score.score_percent) + ", totals 6/5/3/4 " + (totals ? "yes" : "no") +
                    ", decreases over " + std::to_string(kFairSequences) + " sequences " + std::to_string(drops)};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome determinism_check() {
  std::string first, second;
  for (int run = 0; run < 2; ++run) {
    const fs::path dir = fs::temp_directory_path() / ("aidrin_determinism_" + std::to_string(run));
    fs::remove_all(dir);
    const std::string cmd = std::string(AIDRIN_CLI_PATH) + " inspect --input " +
                            aidrin::testing::data_path("german_credit.csv") +
                            " --metrics all --sensitive Sex --target Risk --class-column Purpose"
                            " --quasi-identifiers Housing --seed 7 --out " + dir.string() + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    (void)status;
    (run == 0 ? first : second) = slurp(dir / "report.json");
  }
  const bool pass = !first.empty() && first == second;
  return {pass, "report.json " + std::to_string(first.size()) + " bytes, identical " + (first == second ? "yes" : "no")};
}

}  // namespace

int main() {
  report(1, "completeness on the credit data", completeness_check);
  report(2, "no duplicate rows in the credit data", duplicates_check);
  report(3, "Purpose class proportions", purpose_proportions_check);
  report(4, "imbalance degree of Purpose", imbalance_check);
  report(5, "mean Markov risk for Housing", housing_risk_check);
  report(6, "outlier fractions of numeric columns", outlier_check);
  report(7, "runtime budgets", runtime_check);
  report(8, "Shapley property suite", shapley_check);
  report(9, "Theil's U property suite", theils_u_check);
  report(10, "TSD oracle suite", tsd_check);
  report(11, "FAIR scoring", fair_check);
  report(12, "deterministic report.json for a fixed seed", determinism_check);
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
