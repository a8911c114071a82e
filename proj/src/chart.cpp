#include "aidrin/chart.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "aidrin/error.hpp"

namespace aidrin {

std::string_view to_string(ChartKind kind) {
  switch (kind) {
    case ChartKind::Bar: return "bar";
    case ChartKind::Pie: return "pie";
    case ChartKind::Heatmap: return "heatmap";
    case ChartKind::Box: return "box";
    case ChartKind::Scatter: return "scatter";
    case ChartKind::Histogram: return "histogram";
  }
  return "unknown";
}

void validate(const ChartSpec& spec) {
  auto fail = [&](const std::string& what) {
    throw Error("chart \"" + spec.title + "\" (" + std::string(to_string(spec.kind)) +
                "): " + what);
  };
  if (spec.series.empty()) fail("no series");
  switch (spec.kind) {
    case ChartKind::Bar:
    case ChartKind::Histogram:
    case ChartKind::Heatmap:
      for (const auto& s : spec.series)
        if (s.values.size() != spec.labels.size()) fail("series length differs from labels");
      break;
    case ChartKind::Pie:
      if (spec.series.size() != 1) fail("pie takes exactly one series");
      if (spec.series[0].values.size() != spec.labels.size())
        fail("series length differs from labels");
      for (double v : spec.series[0].values)
        if (!(v >= 0.0) || !std::isfinite(v)) fail("pie values must be finite and non-negative");
      break;
    case ChartKind::Box:
      if (spec.series.size() != spec.labels.size()) fail("one series per box expected");
      for (const auto& s : spec.series) {
        if (s.values.size() != 5) fail("box series needs min, q1, median, q3, max");
        if (!std::is_sorted(s.values.begin(), s.values.end())) fail("box quantiles not ordered");
      }
      break;
    case ChartKind::Scatter:
      if (spec.series.size() != 2) fail("scatter takes an x and a y series");
      if (spec.series[0].values.size() != spec.series[1].values.size())
        fail("x and y lengths differ");
      break;
  }
  if (spec.kind != ChartKind::Heatmap)
    for (const auto& s : spec.series)
      for (double v : s.values)
        if (!std::isfinite(v)) fail("non-finite value in series \"" + s.name + "\"");
}

std::string chart_file_stem(std::string_view metric, std::string_view column) {
  std::string out(metric);
  if (!column.empty()) {
    out += '_';
    out += column;
  }
  for (char& c : out)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-') c = '_';
  return out;
}

}  // namespace aidrin
