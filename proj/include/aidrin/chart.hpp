#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace aidrin {

enum class ChartKind { Bar, Pie, Heatmap, Box, Scatter, Histogram };

std::string_view to_string(ChartKind kind);

struct Series {
  std::string name;
  std::vector<double> values;
};

/// Renderer-independent chart description. Layout of `series` per kind:
///   Bar, Histogram: one or more series, each aligned with `labels`.
///   Pie:            one series of non-negative slice values aligned with `labels`.
///   Heatmap:        one series per matrix row (name = row label), each aligned
///                   with `labels`; NaN marks an absent cell.
///   Box:            one series per box, aligned with `labels`, holding
///                   {min, q1, median, q3, max}.
///   Scatter:        two series "x" and "y" of equal length; `labels` unused.
struct ChartSpec {
  ChartKind kind = ChartKind::Bar;
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<std::string> labels;
  std::vector<Series> series;
  /// Bars grow to the right instead of upwards.
  bool horizontal = false;
  /// Output file stem, conventionally <metric>_<column>.
  std::string name;
};

/// Throws aidrin::Error describing the first violated layout rule.
void validate(const ChartSpec& spec);

/// File-system friendly version of a column or metric name.
std::string chart_file_stem(std::string_view metric, std::string_view column = {});

}  // namespace aidrin
