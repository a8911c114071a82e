#include <doctest.h>

#include <algorithm>

#include "aidrin/error.hpp"
#include "aidrin/fair.hpp"
#include "support.hpp"

using namespace aidrin;
using nlohmann::json;

namespace {

std::string fixture(const std::string& name) { return std::string(AIDRIN_FIXTURE_DIR) + "/" + name; }

std::set<std::string> elements(Dialect d) {
  std::set<std::string> out;
  for (const auto& row : check_table(d)) out.insert(std::string(row.element));
  return out;
}

}  // namespace

TEST_CASE("check tables have fixed per-principle totals") {
  for (auto d : {Dialect::DCAT, Dialect::DataCite}) {
    const auto s = fair_score(catalog_from_json(json::object(), d));
    CHECK(s.of(Principle::Findable).total == 6);
    CHECK(s.of(Principle::Accessible).total == 5);
    CHECK(s.of(Principle::Interoperable).total == 3);
    CHECK(s.of(Principle::Reusable).total == 4);
    CHECK(check_table(d).size() == 18);
  }
}

TEST_CASE("top-level keys are collected") {
  const auto c = parse_metadata_text(R"({"identifier":"x","title":"t"})", Dialect::DCAT);
  CHECK(c.present == std::set<std::string>{"identifier", "title"});
  CHECK(parse_metadata_text("{}", Dialect::DCAT).present.empty());
}

TEST_CASE("distribution entries contribute their keys") {
  const auto c = parse_metadata_text(R"({"distribution":[{"downloadURL":"u","format":"csv"}]})",
                                     Dialect::DCAT);
  CHECK(c.present.count("downloadURL") == 1);
  CHECK(c.present.count("format") == 1);
  const auto obj = parse_metadata_text(R"({"distribution":{"downloadURL":"u"}})", Dialect::DCAT);
  CHECK(obj.present.count("downloadURL") == 1);
}

TEST_CASE("empty values do not count") {
  const auto c = parse_metadata_text(
      R"({"title":"  ","keyword":[],"publisher":{},"license":null,"identifier":0})", Dialect::DCAT);
  CHECK(c.present == std::set<std::string>{"identifier"});
}

TEST_CASE("scores for full, empty and partial records") {
  CHECK(fair_score(parse_metadata(fixture("dcat_full.json"), Dialect::DCAT)).score_percent == 100.0);
  CHECK(fair_score(parse_metadata(fixture("dcat_empty.json"), Dialect::DCAT)).score_percent == 0.0);
  CHECK(fair_score(parse_metadata(fixture("dcat_half.json"), Dialect::DCAT)).score_percent == 50.0);

  const auto two = fair_score(parse_metadata_text(R"({"identifier":"x","title":"t"})", Dialect::DCAT));
  CHECK(two.of(Principle::Findable).fulfilled == 2);
  CHECK(two.of(Principle::Accessible).fulfilled == 0);
  CHECK(two.score_percent == doctest::Approx(100.0 * 2 / 18));
}

TEST_CASE("keys outside the check table are reported as other") {
  const auto s = fair_score(parse_metadata(fixture("dcat_full.json"), Dialect::DCAT));
  CHECK(std::find(s.other_keys.begin(), s.other_keys.end(), "modified") != s.other_keys.end());
  const auto pie = fair_pie_chart(s);
  CHECK(pie.labels.back() == "Other");
  CHECK_NOTHROW(validate(pie));
}

TEST_CASE("datacite records are unwrapped and scored with their own names") {
  const auto s = fair_score(parse_metadata(fixture("datacite.json"), Dialect::DataCite));
  CHECK(s.of(Principle::Findable).fulfilled == 3);      // doi, titles, url
  CHECK(s.of(Principle::Accessible).fulfilled == 2);    // url, publisher
  CHECK(s.of(Principle::Interoperable).fulfilled == 1); // schemaVersion
  CHECK(s.of(Principle::Reusable).fulfilled == 3);      // creators, dates, schemaVersion
}

TEST_CASE("a dialect ignores the other dialect's element names") {
  const auto dcat_only = elements(Dialect::DCAT);
  const auto datacite_only = elements(Dialect::DataCite);
  json doc = json::object();
  for (const auto& k : dcat_only)
    if (!datacite_only.count(k)) doc[k] = "v";
  CHECK(fair_score(catalog_from_json(doc, Dialect::DataCite)).score_percent == 0.0);
  CHECK(fair_score(catalog_from_json(doc, Dialect::DCAT)).score_percent > 0.0);
}

TEST_CASE("score never drops when keys are added") {
  aidrin::Rng rng(13);
  const auto names = elements(Dialect::DCAT);
  std::vector<std::string> keys(names.begin(), names.end());
  keys.push_back("modified");
  keys.push_back("spatial");
  for (int trial = 0; trial < 200; ++trial) {
    aidrin::shuffle(std::span<std::string>(keys), rng);
    json doc = json::object();
    double last = fair_score(catalog_from_json(doc, Dialect::DCAT)).score_percent;
    for (const auto& k : keys) {
      doc[k] = "v";
      const double now = fair_score(catalog_from_json(doc, Dialect::DCAT)).score_percent;
      CHECK(now >= last);
      last = now;
    }
    CHECK(last == 100.0);
  }
}

TEST_CASE("malformed metadata reports a parse error") {
  CHECK_THROWS_AS(parse_metadata_text("{\"a\": ", Dialect::DCAT), ParseError);
  CHECK_THROWS_AS(parse_metadata_text("[1, 2]", Dialect::DCAT), ParseError);
  CHECK_THROWS_AS(parse_metadata(fixture("no_such.json"), Dialect::DCAT), Error);
  CHECK_THROWS_AS(parse_dialect("rdf"), Error);
  CHECK(parse_dialect("DCAT") == Dialect::DCAT);
}
