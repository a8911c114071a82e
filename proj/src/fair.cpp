#include "aidrin/fair.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "aidrin/error.hpp"

namespace aidrin {
namespace {

// DCAT-US element names.
const std::vector<CheckRow> kDcatChecks = {
    {Principle::Findable, "F1", "identifier", "globally unique, persistent identifier"},
    {Principle::Findable, "F2", "title", "descriptive metadata"},
    {Principle::Findable, "F2", "description", "descriptive metadata"},
    {Principle::Findable, "F2", "keyword", "descriptive metadata for search"},
    {Principle::Findable, "F2", "theme", "subject classification"},
    {Principle::Findable, "F4", "landingPage", "indexed, resolvable entry point"},
    {Principle::Accessible, "A1", "distribution", "retrievable through a standard protocol"},
    {Principle::Accessible, "A1", "downloadURL", "direct retrieval location"},
    {Principle::Accessible, "A1.1", "format", "open, documented transfer format"},
    {Principle::Accessible, "A1.2", "accessLevel", "access conditions stated"},
    {Principle::Accessible, "A2", "publisher", "contact point that outlives the data"},
    {Principle::Interoperable, "I1/I2", "format", "formal representation"},
    {Principle::Interoperable, "I1/I2", "conformsTo", "shared vocabulary or schema"},
    {Principle::Interoperable, "I3", "references", "qualified links to related resources"},
    {Principle::Reusable, "R1/R1.1", "license", "usage license"},
    {Principle::Reusable, "R1.2", "programCode", "provenance"},
    {Principle::Reusable, "R1.2", "bureauCode", "provenance"},
    {Principle::Reusable, "R1.3", "conformsTo", "community standard"},
};

// DataCite 4.x JSON attribute names mapped onto the same subcategories.
const std::vector<CheckRow> kDataCiteChecks = {
    {Principle::Findable, "F1", "doi", "globally unique, persistent identifier"},
    {Principle::Findable, "F2", "titles", "descriptive metadata"},
    {Principle::Findable, "F2", "descriptions", "descriptive metadata"},
    {Principle::Findable, "F2", "subjects", "descriptive metadata for search"},
    {Principle::Findable, "F2", "types", "resource type classification"},
    {Principle::Findable, "F4", "url", "indexed, resolvable landing page"},
    {Principle::Accessible, "A1", "url", "retrievable through a standard protocol"},
    {Principle::Accessible, "A1", "contentUrl", "direct retrieval location"},
    {Principle::Accessible, "A1.1", "formats", "open, documented transfer format"},
    {Principle::Accessible, "A1.2", "rightsList", "access conditions stated"},
    {Principle::Accessible, "A2", "publisher", "contact point that outlives the data"},
    {Principle::Interoperable, "I1/I2", "formats", "formal representation"},
    {Principle::Interoperable, "I1/I2", "schemaVersion", "shared metadata schema"},
    {Principle::Interoperable, "I3", "relatedIdentifiers", "qualified links to related resources"},
    {Principle::Reusable, "R1/R1.1", "rightsList", "usage license"},
    {Principle::Reusable, "R1.2", "creators", "provenance"},
    {Principle::Reusable, "R1.2", "dates", "provenance"},
    {Principle::Reusable, "R1.3", "schemaVersion", "community standard"},
};

bool non_empty(const nlohmann::json& v) {
  if (v.is_null()) return false;
  if (v.is_string()) {
    const auto& s = v.get_ref<const std::string&>();
    return std::any_of(s.begin(), s.end(),
                       [](char c) { return !std::isspace(static_cast<unsigned char>(c)); });
  }
  if (v.is_array() || v.is_object()) return !v.empty();
  return true;
}

void collect(const nlohmann::json& object, std::set<std::string>& out) {
  for (auto it = object.begin(); it != object.end(); ++it)
    if (non_empty(it.value())) out.insert(it.key());
}

}  // namespace

std::string_view to_string(Dialect dialect) {
  return dialect == Dialect::DCAT ? "dcat" : "datacite";
}

std::string_view to_string(Principle principle) {
  switch (principle) {
    case Principle::Findable: return "Findable";
    case Principle::Accessible: return "Accessible";
    case Principle::Interoperable: return "Interoperable";
    case Principle::Reusable: return "Reusable";
  }
  return "";
}

Dialect parse_dialect(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "dcat") return Dialect::DCAT;
  if (lower == "datacite") return Dialect::DataCite;
  throw Error("unknown metadata dialect \"" + std::string(text) +
              "\"; expected dcat or datacite");
}

const std::vector<CheckRow>& check_table(Dialect dialect) {
  return dialect == Dialect::DCAT ? kDcatChecks : kDataCiteChecks;
}

MetadataCatalog catalog_from_json(const nlohmann::json& document, Dialect dialect) {
  if (!document.is_object()) throw ParseError("metadata document must be a JSON object");
  MetadataCatalog cat;
  cat.dialect = dialect;
  cat.document = document;
  // DataCite REST payloads wrap the record as {"data": {"attributes": {...}}}.
  const nlohmann::json* root = &document;
  if (dialect == Dialect::DataCite && document.contains("data") &&
      document["data"].is_object() && document["data"].contains("attributes") &&
      document["data"]["attributes"].is_object())
    root = &document["data"]["attributes"];
  collect(*root, cat.present);

  if (dialect == Dialect::DCAT && root->contains("distribution")) {
    const auto& dist = (*root)["distribution"];
    if (dist.is_object()) collect(dist, cat.present);
    if (dist.is_array())
      for (const auto& entry : dist)
        if (entry.is_object()) collect(entry, cat.present);
  }
  return cat;
}

MetadataCatalog parse_metadata_text(std::string_view text, Dialect dialect) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("malformed metadata at byte " + std::to_string(e.byte) + ": " + e.what());
  }
  return catalog_from_json(doc, dialect);
}

MetadataCatalog parse_metadata(const std::string& path, Dialect dialect) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read \"" + path + "\"");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_metadata_text(buf.str(), dialect);
}

FairScore fair_score(const MetadataCatalog& catalog) {
  FairScore score;
  score.dialect = catalog.dialect;
  std::set<std::string_view> check_keys;
  std::size_t fulfilled = 0, total = 0;
  for (const auto& row : check_table(catalog.dialect)) {
    auto& p = score.per_principle[static_cast<std::size_t>(row.principle)];
    ++p.total;
    ++total;
    check_keys.insert(row.element);
    if (catalog.present.count(std::string(row.element))) {
      ++p.fulfilled;
      ++fulfilled;
      score.fulfilled_checks.push_back(std::string(to_string(row.principle)).substr(0, 1) +
                                       ":" + std::string(row.element));
    }
  }
  for (const auto& key : catalog.present)
    if (!check_keys.count(key)) score.other_keys.push_back(key);
  score.score_percent = 100.0 * static_cast<double>(fulfilled) / static_cast<double>(total);
  return score;
}

ChartSpec fair_pie_chart(const FairScore& score) {
  ChartSpec spec;
  spec.kind = ChartKind::Pie;
  spec.title = "FAIR compliance (" + std::string(to_string(score.dialect)) + ")";
  spec.name = chart_file_stem("fair", to_string(score.dialect));
  Series s{"checks", {}};
  for (auto p : kPrinciples) {
    spec.labels.emplace_back(to_string(p));
    s.values.push_back(static_cast<double>(score.of(p).fulfilled));
  }
  spec.labels.emplace_back("Other");
  s.values.push_back(static_cast<double>(score.other_keys.size()));
  spec.series.push_back(std::move(s));
  return spec;
}

}  // namespace aidrin
