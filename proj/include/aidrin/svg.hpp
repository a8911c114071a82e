#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "aidrin/chart.hpp"

namespace aidrin {

/// Start and end angle in radians of each slice, measured clockwise from
/// twelve o'clock. Zero values give empty slices.
std::vector<std::pair<double, double>> pie_angles(std::span<const double> values);

/// Bar lengths scaled so that the largest value spans `extent`.
/// Negative values are drawn with length 0.
std::vector<double> bar_heights(std::span<const double> values, double extent);

/// Scatter plots keep at most this many points in the rendered file.
inline constexpr std::size_t kMaxScatterPoints = 5000;

/// Standalone SVG document for `spec`; validates it first.
std::string render_svg(const ChartSpec& spec);
void write_svg(const ChartSpec& spec, const std::filesystem::path& path);

}  // namespace aidrin
