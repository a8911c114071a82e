#include "aidrin/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "aidrin/error.hpp"

namespace aidrin {
namespace {

constexpr double kMissingValue = std::numeric_limits<double>::quiet_NaN();

std::string_view trim(std::string_view s) {
  auto is_space = [](char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) ==
                  std::tolower(static_cast<unsigned char>(y));
         });
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& item : items) {
    if (!out.empty()) out += ", ";
    out += '"' + item + '"';
  }
  return out;
}

// RFC-4180 record splitter over an in-memory buffer. Quoted fields may span
// lines and use "" as an escaped quote. CRLF and LF are both accepted.
class CsvReader {
 public:
  CsvReader(std::string_view text, char delimiter) : text_(text), delim_(delimiter) {}

  // Returns false at end of input.
  bool next(std::vector<std::string>& fields) {
    fields.clear();
    if (pos_ >= text_.size()) return false;
    std::string field;
    bool quoted = false;
    bool field_was_quoted = false;
    while (pos_ < text_.size()) {
      char c = text_[pos_++];
      if (quoted) {
        if (c == '"') {
          if (pos_ < text_.size() && text_[pos_] == '"') {
            field += '"';
            ++pos_;
          } else {
            quoted = false;
          }
        } else {
          field += c;
        }
        continue;
      }
      if (c == '"' && !field_was_quoted && trim(field).empty()) {
        field.clear();
        quoted = true;
        field_was_quoted = true;
      } else if (c == delim_) {
        fields.push_back(std::move(field));
        field.clear();
        field_was_quoted = false;
      } else if (c == '\n' || c == '\r') {
        if (c == '\r' && pos_ < text_.size() && text_[pos_] == '\n') ++pos_;
        break;
      } else {
        field += c;
      }
    }
    if (quoted) throw ParseError("unterminated quoted field at end of input");
    blank_ = fields.empty() && field.empty() && !field_was_quoted;
    fields.push_back(std::move(field));
    ++line_;
    return true;
  }

  std::size_t line() const { return line_; }
  bool blank() const { return blank_; }

 private:
  std::string_view text_;
  char delim_;
  std::size_t pos_ = 0;
  std::size_t line_ = 0;
  bool blank_ = false;
};

bool needs_quoting(std::string_view s, char delimiter) {
  if (s.empty()) return false;
  if (s.front() == ' ' || s.back() == ' ') return true;
  return s.find_first_of(std::string{delimiter, '"', '\n', '\r'}) != std::string_view::npos;
}

void write_field(std::ostream& out, std::string_view s, char delimiter,
                 bool quote_empty = false) {
  if (!needs_quoting(s, delimiter) && !(quote_empty && s.empty())) {
    out << s;
    return;
  }
  out << '"';
  for (char c : s) {
    if (c == '"') out << '"';
    out << c;
  }
  out << '"';
}

std::string format_number(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

}  // namespace

std::string_view to_string(ValueKind kind) {
  return kind == ValueKind::Numeric ? "numeric" : "categorical";
}

// ---- Column ---------------------------------------------------------------

Column Column::numeric(std::string name, std::vector<std::optional<double>> values) {
  Column col;
  col.name_ = std::move(name);
  col.kind_ = ValueKind::Numeric;
  col.values_.reserve(values.size());
  for (const auto& v : values) {
    if (!v) {
      col.values_.push_back(kMissingValue);
      ++col.missing_count_;
    } else if (!std::isfinite(*v)) {
      throw Error("column \"" + col.name_ + "\": numeric cells must be finite");
    } else {
      col.values_.push_back(*v == 0.0 ? 0.0 : *v);
    }
  }
  return col;
}

Column Column::categorical(std::string name,
                           std::vector<std::optional<std::string>> labels) {
  Column col;
  col.name_ = std::move(name);
  col.kind_ = ValueKind::Categorical;
  col.codes_.reserve(labels.size());
  std::unordered_map<std::string, std::int32_t> index;
  for (auto& label : labels) {
    if (!label) {
      col.codes_.push_back(kMissingCode);
      ++col.missing_count_;
      continue;
    }
    auto [it, inserted] =
        index.try_emplace(*label, static_cast<std::int32_t>(col.levels_.size()));
    if (inserted) col.levels_.push_back(std::move(*label));
    col.codes_.push_back(it->second);
  }
  return col;
}

std::size_t Column::size() const {
  return kind_ == ValueKind::Numeric ? values_.size() : codes_.size();
}

bool Column::is_missing(std::size_t row) const {
  return kind_ == ValueKind::Numeric ? std::isnan(values_.at(row))
                                     : codes_.at(row) == kMissingCode;
}

Cell Column::cell(std::size_t row) const {
  if (is_missing(row)) return Missing{};
  if (kind_ == ValueKind::Numeric) return values_[row];
  return levels_[static_cast<std::size_t>(codes_[row])];
}

std::vector<double> Column::present_values() const {
  std::vector<double> out;
  out.reserve(non_missing_count());
  for (double v : values_)
    if (!std::isnan(v)) out.push_back(v);
  return out;
}

Column Column::with_warning(std::string warning) const {
  Column copy = *this;
  copy.warnings_.push_back(std::move(warning));
  return copy;
}

Column Column::renamed(std::string name) const {
  Column copy = *this;
  copy.name_ = std::move(name);
  return copy;
}

bool Column::operator==(const Column& other) const {
  if (name_ != other.name_ || kind_ != other.kind_ || size() != other.size()) return false;
  for (std::size_t i = 0; i < size(); ++i)
    if (cell(i) != other.cell(i)) return false;
  return true;
}

// ---- Dataset --------------------------------------------------------------

Dataset::Dataset(std::string name, std::vector<Column> columns) : name_(std::move(name)) {
  std::unordered_set<std::string> seen;
  for (std::size_t i = 0; i < columns.size(); ++i) {
    auto& col = columns[i];
    std::string trimmed{trim(col.name())};
    if (!seen.insert(trimmed).second)
      throw Error("duplicate column name \"" + trimmed + "\"");
    if (i == 0) row_count_ = col.size();
    if (col.size() != row_count_)
      throw Error("column \"" + trimmed + "\" has " + std::to_string(col.size()) +
                  " cells, expected " + std::to_string(row_count_));
    if (trimmed != col.name()) col = col.renamed(trimmed);
    columns_.push_back(std::make_shared<const Column>(std::move(col)));
  }
}

const Column* Dataset::find(std::string_view name) const {
  for (const auto& col : columns_)
    if (col->name() == name) return col.get();
  return nullptr;
}

const Column& Dataset::column(std::string_view name) const {
  if (const Column* col = find(name)) return *col;
  throw Error("unknown column \"" + std::string(name) + "\"; available: " +
              join(column_names()));
}

std::vector<std::string> Dataset::column_names() const {
  std::vector<std::string> names;
  names.reserve(columns_.size());
  for (const auto& col : columns_) names.push_back(col->name());
  return names;
}

bool Dataset::operator==(const Dataset& other) const {
  if (row_count_ != other.row_count_ || columns_.size() != other.columns_.size())
    return false;
  for (std::size_t i = 0; i < columns_.size(); ++i)
    if (!(*columns_[i] == *other.columns_[i])) return false;
  return true;
}

Dataset select_columns(const Dataset& ds, std::span<const std::string> names) {
  if (names.empty()) throw Error("empty column selection");
  std::vector<std::string> unknown;
  std::unordered_set<std::string_view> seen;
  for (const auto& name : names) {
    if (!seen.insert(name).second)
      throw Error("column \"" + name + "\" selected more than once");
    if (!ds.find(name)) unknown.push_back(name);
  }
  if (!unknown.empty())
    throw Error("unknown columns " + join(unknown) + "; available: " +
                join(ds.column_names()));

  Dataset out;
  out.name_ = ds.name_;
  out.row_count_ = ds.row_count_;
  for (const auto& name : names)
    for (const auto& col : ds.columns_)
      if (col->name() == name) out.columns_.push_back(col);
  return out;
}

// ---- Parsing --------------------------------------------------------------

bool is_missing_token(std::string_view raw, const CsvOptions& options) {
  auto t = trim(raw);
  return std::any_of(options.missing_tokens.begin(), options.missing_tokens.end(),
                     [&](const std::string& tok) { return iequals(t, trim(tok)); });
}

std::optional<double> parse_number(std::string_view text) {
  auto t = trim(text);
  if (!t.empty() && t.front() == '+') t.remove_prefix(1);
  if (t.empty()) return std::nullopt;
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc{} || ptr != t.data() + t.size() || !std::isfinite(v))
    return std::nullopt;
  return v;
}

KindInference infer_kind(std::span<const std::string> raw_cells, const CsvOptions& options) {
  bool any_present = false;
  for (const auto& raw : raw_cells) {
    if (is_missing_token(raw, options)) continue;
    any_present = true;
    if (!parse_number(raw)) return {ValueKind::Categorical, std::nullopt};
  }
  if (!any_present)
    return {ValueKind::Categorical,
            "all cells are missing; column treated as categorical and excluded from "
            "numeric metrics"};
  return {ValueKind::Numeric, std::nullopt};
}

Dataset parse_csv(std::string_view text, std::string name, const CsvOptions& options) {
  CsvReader reader(text, options.delimiter);
  std::vector<std::string> header;
  if (!reader.next(header)) throw ParseError("input is empty; expected a header row");

  std::vector<std::vector<std::string>> raw(header.size());
  std::vector<std::string> fields;
  std::size_t row = 0;
  while (reader.next(fields)) {
    if (reader.blank()) continue;
    if (fields.size() != header.size())
      throw ParseError("data row " + std::to_string(row) + " (line " +
                       std::to_string(reader.line()) + ") has " +
                       std::to_string(fields.size()) + " cells, expected " +
                       std::to_string(header.size()));
    for (std::size_t c = 0; c < fields.size(); ++c) raw[c].push_back(std::move(fields[c]));
    ++row;
  }
  if (row == 0) throw ParseError("no data rows after the header");

  std::vector<Column> columns;
  columns.reserve(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) {
    auto& cells = raw[c];
    auto inference = infer_kind(cells, options);
    std::string col_name{trim(header[c])};
    if (inference.kind == ValueKind::Numeric) {
      std::vector<std::optional<double>> values;
      values.reserve(cells.size());
      for (const auto& s : cells)
        values.push_back(is_missing_token(s, options) ? std::nullopt : parse_number(s));
      columns.push_back(Column::numeric(std::move(col_name), std::move(values)));
    } else {
      std::vector<std::optional<std::string>> labels;
      labels.reserve(cells.size());
      for (auto& s : cells) {
        if (is_missing_token(s, options))
          labels.emplace_back(std::nullopt);
        else
          labels.emplace_back(std::move(s));
      }
      Column col = Column::categorical(std::move(col_name), std::move(labels));
      if (inference.warning) col = col.with_warning(*inference.warning);
      columns.push_back(std::move(col));
    }
    std::vector<std::string>().swap(cells);
  }
  return Dataset(std::move(name), std::move(columns));
}

Dataset load_csv(const std::string& path, const CsvOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read \"" + path + "\"");
  std::ostringstream buf;
  buf << in.rdbuf();
  std::string name = path;
  if (auto slash = name.find_last_of("/\\"); slash != std::string::npos)
    name = name.substr(slash + 1);
  return parse_csv(buf.str(), std::move(name), options);
}

void write_csv(const Dataset& ds, std::ostream& out, const CsvOptions& options) {
  const std::string na = options.missing_tokens.empty() ? "" : options.missing_tokens.front();
  const char d = options.delimiter;
  for (std::size_t c = 0; c < ds.column_count(); ++c) {
    if (c) out << d;
    write_field(out, ds.column(c).name(), d);
  }
  out << '\n';
  for (std::size_t r = 0; r < ds.row_count(); ++r) {
    for (std::size_t c = 0; c < ds.column_count(); ++c) {
      if (c) out << d;
      const Column& col = ds.column(c);
      if (col.is_missing(r))
        write_field(out, na, d, ds.column_count() == 1);
      else if (col.is_numeric())
        out << format_number(col.raw_values()[r]);
      else
        write_field(out, col.levels()[static_cast<std::size_t>(col.codes()[r])], d);
    }
    out << '\n';
  }
}

}  // namespace aidrin
