#include <doctest.h>

#include <sstream>

#include "aidrin/dataset.hpp"
#include "aidrin/error.hpp"
#include "support.hpp"

using namespace aidrin;
using aidrin::testing::cat;
using aidrin::testing::num;

TEST_CASE("csv kind inference and missing tokens") {
  const Dataset ds = parse_csv("a,b,c\n1,x,NA\n2,y,\n3.5,NA,null\n", "t");
  CHECK(ds.row_count() == 3);
  CHECK(ds.column("a").is_numeric());
  CHECK(ds.column("b").is_categorical());
  CHECK(ds.column("b").missing_count() == 1);
  const Column& c = ds.column("c");
  CHECK(c.is_categorical());
  CHECK(c.missing_count() == 3);
  REQUIRE(c.warnings().size() == 1);
  CHECK(c.warnings()[0].find("all cells are missing") != std::string::npos);
}

TEST_CASE("one non-numeric token makes a column categorical") {
  const Dataset ds = parse_csv("v\n1\n2\nthree\n", "t");
  CHECK(ds.column("v").is_categorical());
  CHECK(ds.column("v").levels() == std::vector<std::string>{"1", "2", "three"});
}

TEST_CASE("quoted fields, embedded delimiters and CRLF") {
  const Dataset ds = parse_csv("name,note\r\n\"Smith, J\",\"said \"\"hi\"\"\"\r\n\r\nLee,ok\r\n", "t");
  CHECK(ds.row_count() == 2);
  CHECK(std::get<std::string>(ds.column("name").cell(0)) == "Smith, J");
  CHECK(std::get<std::string>(ds.column("note").cell(0)) == "said \"hi\"");
}

TEST_CASE("custom delimiter and missing tokens") {
  CsvOptions opt;
  opt.delimiter = ';';
  opt.missing_tokens = {"?"};
  const Dataset ds = parse_csv("x;y\n1;?\n2;b\n", "t", opt);
  CHECK(ds.column("x").is_numeric());
  CHECK(ds.column("y").is_missing(0));
}

TEST_CASE("parse errors point at the offending row") {
  CHECK_THROWS_AS(parse_csv("", "t"), ParseError);
  CHECK_THROWS_AS(parse_csv("a,b\n", "t"), ParseError);
  CHECK_THROWS_AS(parse_csv("a\n\"open\n", "t"), ParseError);
  try {
    parse_csv("a,b\n1,2\n3\n", "t");
    FAIL("ragged row accepted");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("data row 1") != std::string::npos);
  }
}

TEST_CASE("duplicate header names are rejected") {
  CHECK_THROWS_AS(parse_csv("a, a\n1,2\n", "t"), Error);
}

TEST_CASE("parse_number accepts plain decimal forms only") {
  CHECK(parse_number(" 4.5 ") == 4.5);
  CHECK(parse_number("+3") == 3.0);
  CHECK(parse_number("1e3") == 1000.0);
  CHECK_FALSE(parse_number("inf"));
  CHECK_FALSE(parse_number("nan"));
  CHECK_FALSE(parse_number("3x"));
  CHECK_FALSE(parse_number(""));
}

TEST_CASE("negative zero is stored as zero") {
  const Column c = num("z", {-0.0});
  CHECK_FALSE(std::signbit(c.raw_values()[0]));
}

TEST_CASE("unknown column lookup lists what is available") {
  const Dataset ds("t", {num("a", {1}), cat("b", {"x"})});
  try {
    (void)ds.column("zzz");
    FAIL("no throw");
  } catch (const Error& e) {
    const std::string msg = e.what();
    CHECK(msg.find("zzz") != std::string::npos);
    CHECK(msg.find("\"a\", \"b\"") != std::string::npos);
  }
  CHECK(ds.find("zzz") == nullptr);
}

TEST_CASE("columns of different length are rejected") {
  CHECK_THROWS_AS(Dataset("t", {num("a", {1, 2}), num("b", {1})}), Error);
}

TEST_CASE("select_columns keeps order and shares storage") {
  const Dataset ds("t", {num("a", {1, 2}), cat("b", {"x", "y"}), num("c", {3, 4})});
  const std::vector<std::string> pick = {"c", "a"};
  const Dataset sub = select_columns(ds, pick);
  CHECK(sub.column_names() == pick);
  CHECK(&sub.column("a") == &ds.column("a"));
  CHECK_THROWS_AS(select_columns(ds, std::vector<std::string>{}), Error);
  CHECK_THROWS_AS(select_columns(ds, std::vector<std::string>{"a", "a"}), Error);
  CHECK_THROWS_AS(select_columns(ds, std::vector<std::string>{"q"}), Error);
}

TEST_CASE("write then parse round-trips cell for cell") {
  aidrin::Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + aidrin::uniform_index(rng, 30);
    std::vector<std::optional<double>> xs;
    std::vector<std::optional<std::string>> ls;
    const char* pool[] = {"a", "b,c", "say \"x\"", " lead", "multi\nline"};
    for (std::size_t i = 0; i < n; ++i) {
      const bool miss = aidrin::uniform_index(rng, 5) == 0;
      xs.push_back(miss ? std::nullopt
                        : std::optional<double>(static_cast<double>(rng() % 100000) / 7.0 - 5000));
      ls.push_back(aidrin::uniform_index(rng, 6) == 0
                       ? std::nullopt
                       : std::optional<std::string>(pool[aidrin::uniform_index(rng, 5)]));
    }
    // keep at least one present numeric so the kind survives inference
    xs[0] = 1.25;
    ls[0] = "a";
    const Dataset ds("t", {Column::numeric("x", xs), Column::categorical("l", ls)});
    std::ostringstream out;
    write_csv(ds, out);
    CHECK(parse_csv(out.str(), "t") == ds);
  }
}

TEST_CASE("load_csv reads the bundled credit data") {
  const Dataset ds = load_csv(aidrin::testing::data_path("german_credit.csv"));
  CHECK(ds.row_count() == 1000);
  CHECK(ds.column_count() == 10);
  CHECK(ds.name() == "german_credit.csv");
  CHECK_THROWS_AS(load_csv("/nonexistent/file.csv"), Error);
}
