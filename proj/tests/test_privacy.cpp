#include <doctest.h>

#include "aidrin/error.hpp"
#include "aidrin/privacy.hpp"
#include "support.hpp"

using namespace aidrin;
using aidrin::testing::cat;
using aidrin::testing::num;

TEST_CASE("initial distribution of a single attribute") {
  std::vector<std::string> v(713, "own");
  v.insert(v.end(), 179, "rent");
  v.insert(v.end(), 108, "free");
  const Dataset ds("t", {cat("Housing", v)});
  const auto model = fit_markov(ds, {"Housing"});
  CHECK(model.initial.at("own") == doctest::Approx(0.713));
  CHECK(model.initial.at("rent") == doctest::Approx(0.179));
  CHECK(model.initial.at("free") == doctest::Approx(0.108));
  const auto r = risk_scores(model, ds);
  CHECK(r.mean_risk == doctest::Approx(1 - (0.713 * 0.713 + 0.179 * 0.179 + 0.108 * 0.108)));
}

TEST_CASE("transition rows for correlated and independent attributes") {
  const Dataset same("t", {cat("a", {"x", "y", "x"}), cat("b", {"x", "y", "x"})});
  const auto m = fit_markov(same, {"a", "b"});
  CHECK(m.transitions[0].at("x").size() == 1);
  CHECK(m.transitions[0].at("x").at("x") == 1.0);

  const Dataset ind("t", {cat("a", {"0", "0", "1", "1"}), cat("b", {"0", "1", "0", "1"})});
  const auto m2 = fit_markov(ind, {"a", "b"});
  for (const auto& [from, row] : m2.transitions[0])
    for (const auto& [to, p] : row) CHECK(p == 0.5);
}

TEST_CASE("risk of uniform and constant attributes") {
  const Dataset one("t", {cat("a", {"x", "x", "x"})});
  const auto r1 = risk_scores(fit_markov(one, {"a"}), one);
  CHECK(r1.mean_risk == 0.0);
  CHECK(r1.histogram[0] == 3);

  const Dataset two("t", {cat("a", {"x", "y", "x", "y"})});
  const auto r2 = risk_scores(fit_markov(two, {"a"}), two);
  for (double r : r2.per_record) CHECK(r == 0.5);
  CHECK(r2.histogram[5] == 4);
}

TEST_CASE("missing and unseen values") {
  const Dataset train("t", {cat("a", {"x", "y"})});
  const auto model = fit_markov(train, {"a"});
  const Dataset other("t", {Column::categorical("a", {std::string("z"), std::nullopt, std::string("x")})});
  const auto r = risk_scores(model, other);
  CHECK(r.skipped_rows == 1);
  CHECK(r.per_record == std::vector<double>{1.0, 0.5});
  CHECK(r.row_index == std::vector<std::size_t>{0, 2});
  CHECK(r.warnings.size() == 2);
}

TEST_CASE("privacy rejects numeric or absent quasi-identifiers") {
  const Dataset ds("t", {num("n", {1, 2}), cat("c", {"a", "b"})});
  CHECK_THROWS_AS(fit_markov(ds, {"n"}), Error);
  CHECK_THROWS_AS(fit_markov(ds, {}), Error);
  CHECK_THROWS_AS(fit_markov(ds, {"nope"}), Error);
}

TEST_CASE("adding an attribute never lowers risk on complete data") {
  aidrin::Rng rng(41);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 5 + aidrin::uniform_index(rng, 100);
    const Dataset ds("t", {cat("a", aidrin::testing::random_labels(rng, n, 4, "a")),
                           cat("b", aidrin::testing::random_labels(rng, n, 3, "b")),
                           cat("c", aidrin::testing::random_labels(rng, n, 5, "c"))});
    const auto r1 = risk_scores(fit_markov(ds, {"a"}), ds);
    const auto r2 = risk_scores(fit_markov(ds, {"a", "b"}), ds);
    const auto r3 = risk_scores(fit_markov(ds, {"a", "b", "c"}), ds);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(r2.per_record[i] >= r1.per_record[i] - 1e-12);
      CHECK(r3.per_record[i] >= r2.per_record[i] - 1e-12);
    }
  }
}
