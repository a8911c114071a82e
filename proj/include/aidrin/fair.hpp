#pragma once

#include <array>
#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "aidrin/chart.hpp"

namespace aidrin {

enum class Dialect { DCAT, DataCite };
enum class Principle { Findable, Accessible, Interoperable, Reusable };

inline constexpr std::array<Principle, 4> kPrinciples = {
    Principle::Findable, Principle::Accessible, Principle::Interoperable, Principle::Reusable};

std::string_view to_string(Dialect dialect);
std::string_view to_string(Principle principle);
/// Accepts "dcat" and "datacite" in any case.
Dialect parse_dialect(std::string_view text);

/// A metadata record reduced to the set of keys that carry a non-empty
/// value. For DCAT, keys inside "distribution" entries are included too.
struct MetadataCatalog {
  Dialect dialect = Dialect::DCAT;
  std::set<std::string> present;
  nlohmann::json document;
};

struct CheckRow {
  Principle principle;
  std::string_view subcategory;
  std::string_view element;
  std::string_view rationale;
};

/// 18 rows per dialect: Findable 6, Accessible 5, Interoperable 3, Reusable 4.
const std::vector<CheckRow>& check_table(Dialect dialect);

struct PrincipleScore {
  std::size_t fulfilled = 0;
  std::size_t total = 0;
};

struct FairScore {
  Dialect dialect = Dialect::DCAT;
  std::array<PrincipleScore, 4> per_principle{};  // indexed like kPrinciples
  std::vector<std::string> fulfilled_checks;      // "F:identifier", ...
  std::vector<std::string> other_keys;
  double score_percent = 0.0;

  const PrincipleScore& of(Principle p) const {
    return per_principle[static_cast<std::size_t>(p)];
  }
};

/// Throws aidrin::ParseError with the byte offset on malformed JSON.
MetadataCatalog parse_metadata_text(std::string_view text, Dialect dialect);
MetadataCatalog parse_metadata(const std::string& path, Dialect dialect);
MetadataCatalog catalog_from_json(const nlohmann::json& document, Dialect dialect);

/// A check holds when its element key is present with a non-empty value;
/// a key listed under several principles counts for each of them.
FairScore fair_score(const MetadataCatalog& catalog);

/// Fulfilled checks per principle plus an "Other" slice for unmatched keys.
ChartSpec fair_pie_chart(const FairScore& score);

}  // namespace aidrin
