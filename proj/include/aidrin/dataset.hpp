#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace aidrin {

enum class ValueKind { Numeric, Categorical };

std::string_view to_string(ValueKind kind);

struct Missing {
  bool operator==(const Missing&) const = default;
};

/// A single table cell as seen by callers. Numeric values are always finite.
using Cell = std::variant<Missing, double, std::string>;

/// One typed column. Numeric columns keep a dense double vector with NaN as
/// the internal missing marker; categorical columns keep dictionary codes
/// (-1 for missing) into a level list ordered by first appearance.
class Column {
 public:
  static constexpr std::int32_t kMissingCode = -1;

  /// Throws if any present value is not finite.
  static Column numeric(std::string name, std::vector<std::optional<double>> values);
  static Column categorical(std::string name,
                            std::vector<std::optional<std::string>> labels);

  const std::string& name() const { return name_; }
  ValueKind kind() const { return kind_; }
  bool is_numeric() const { return kind_ == ValueKind::Numeric; }
  bool is_categorical() const { return kind_ == ValueKind::Categorical; }
  std::size_t size() const;

  bool is_missing(std::size_t row) const;
  std::size_t missing_count() const { return missing_count_; }
  std::size_t non_missing_count() const { return size() - missing_count_; }
  Cell cell(std::size_t row) const;

  /// Numeric storage, NaN where missing. Empty for categorical columns.
  std::span<const double> raw_values() const { return values_; }
  std::vector<double> present_values() const;

  /// Categorical storage. Empty for numeric columns.
  std::span<const std::int32_t> codes() const { return codes_; }
  const std::vector<std::string>& levels() const { return levels_; }

  const std::vector<std::string>& warnings() const { return warnings_; }
  Column with_warning(std::string warning) const;
  Column renamed(std::string name) const;

  bool operator==(const Column& other) const;

 private:
  Column() = default;

  std::string name_;
  ValueKind kind_ = ValueKind::Categorical;
  std::vector<double> values_;
  std::vector<std::int32_t> codes_;
  std::vector<std::string> levels_;
  std::size_t missing_count_ = 0;
  std::vector<std::string> warnings_;
};

/// Immutable column-oriented table. Columns are shared between datasets
/// derived by selection, so copies are cheap.
class Dataset {
 public:
  Dataset(std::string name, std::vector<Column> columns);

  const std::string& name() const { return name_; }
  std::size_t row_count() const { return row_count_; }
  std::size_t column_count() const { return columns_.size(); }
  bool empty() const { return columns_.empty() || row_count_ == 0; }

  const Column& column(std::size_t index) const { return *columns_.at(index); }
  /// Throws aidrin::Error naming the available columns if absent.
  const Column& column(std::string_view name) const;
  const Column* find(std::string_view name) const;
  std::vector<std::string> column_names() const;

  bool operator==(const Dataset& other) const;

 private:
  friend Dataset select_columns(const Dataset&, std::span<const std::string>);
  Dataset() = default;

  std::string name_;
  std::vector<std::shared_ptr<const Column>> columns_;
  std::size_t row_count_ = 0;
};

struct CsvOptions {
  char delimiter = ',';
  /// Compared case-insensitively against the whitespace-trimmed cell.
  std::vector<std::string> missing_tokens = {"", "NA", "N/A", "null", "NaN"};
};

struct KindInference {
  ValueKind kind = ValueKind::Categorical;
  std::optional<std::string> warning;
};

bool is_missing_token(std::string_view raw, const CsvOptions& options);

/// Parses a finite real, accepting surrounding whitespace and a leading '+'.
std::optional<double> parse_number(std::string_view text);

/// Numeric iff every non-missing cell parses as a finite real. All-missing
/// input is Categorical with a warning.
KindInference infer_kind(std::span<const std::string> raw_cells,
                         const CsvOptions& options = {});

Dataset load_csv(const std::string& path, const CsvOptions& options = {});
Dataset parse_csv(std::string_view text, std::string name,
                  const CsvOptions& options = {});
void write_csv(const Dataset& ds, std::ostream& out, const CsvOptions& options = {});

/// Restricts to the named columns, in the given order.
Dataset select_columns(const Dataset& ds, std::span<const std::string> names);

}  // namespace aidrin
