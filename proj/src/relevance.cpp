#include "aidrin/relevance.hpp"

#include <algorithm>
#include <map>

#include "aidrin/summary.hpp"

namespace aidrin {
namespace {

Series box_series(std::string name, std::vector<double> values) {
  std::sort(values.begin(), values.end());
  return {std::move(name),
          {values.front(), quantile(values, 0.25), quantile(values, 0.5), quantile(values, 0.75),
           values.back()}};
}

// Values of `numeric` grouped by the level of `categorical`, levels sorted.
std::map<std::string, std::vector<double>> grouped(const Column& numeric,
                                                   const Column& categorical) {
  std::map<std::string, std::vector<double>> groups;
  for (std::size_t r = 0; r < numeric.size(); ++r) {
    if (numeric.is_missing(r) || categorical.is_missing(r)) continue;
    groups[categorical.levels()[static_cast<std::size_t>(categorical.codes()[r])]].push_back(
        numeric.raw_values()[r]);
  }
  return groups;
}

ChartSpec box_chart(const Column& numeric, const Column& categorical, std::string title,
                    std::string name) {
  ChartSpec spec;
  spec.kind = ChartKind::Box;
  spec.title = std::move(title);
  spec.x_label = categorical.name();
  spec.y_label = numeric.name();
  spec.name = std::move(name);
  for (auto& [level, values] : grouped(numeric, categorical)) {
    spec.labels.push_back(level);
    spec.series.push_back(box_series(level, std::move(values)));
  }
  return spec;
}

}  // namespace

std::vector<ChartSpec> relevance_charts(const Dataset& ds, const std::vector<std::string>& features,
                                        const std::string& target) {
  const Column& y = ds.column(target);
  std::vector<ChartSpec> charts;
  for (const auto& feature : features) {
    const Column& x = ds.column(feature);
    const std::string title = feature + " vs " + target;
    const std::string name = chart_file_stem("feature_relevance", feature);
    if (x.is_numeric() && y.is_numeric()) {
      ChartSpec spec;
      spec.kind = ChartKind::Scatter;
      spec.title = title;
      spec.x_label = feature;
      spec.y_label = target;
      spec.name = name;
      Series xs{"x", {}}, ys{"y", {}};
      for (std::size_t r = 0; r < ds.row_count(); ++r) {
        if (x.is_missing(r) || y.is_missing(r)) continue;
        xs.values.push_back(x.raw_values()[r]);
        ys.values.push_back(y.raw_values()[r]);
      }
      spec.series = {std::move(xs), std::move(ys)};
      charts.push_back(std::move(spec));
    } else if (x.is_numeric()) {
      charts.push_back(box_chart(x, y, title, name));
    } else if (y.is_numeric()) {
      charts.push_back(box_chart(y, x, title, name));
    } else {
      std::map<std::string, std::map<std::string, double>> counts;  // target -> feature -> n
      std::map<std::string, bool> feature_levels;
      for (std::size_t r = 0; r < ds.row_count(); ++r) {
        if (x.is_missing(r) || y.is_missing(r)) continue;
        const auto& fl = x.levels()[static_cast<std::size_t>(x.codes()[r])];
        const auto& tl = y.levels()[static_cast<std::size_t>(y.codes()[r])];
        counts[tl][fl] += 1.0;
        feature_levels[fl] = true;
      }
      ChartSpec spec;
      spec.kind = ChartKind::Bar;
      spec.title = title;
      spec.x_label = feature;
      spec.y_label = "count";
      spec.name = name;
      for (const auto& [level, unused] : feature_levels) spec.labels.push_back(level);
      for (const auto& [target_level, by_feature] : counts) {
        Series s{target_level, {}};
        for (const auto& level : spec.labels) {
          auto it = by_feature.find(level);
          s.values.push_back(it == by_feature.end() ? 0.0 : it->second);
        }
        spec.series.push_back(std::move(s));
      }
      charts.push_back(std::move(spec));
    }
  }
  return charts;
}

}  // namespace aidrin
