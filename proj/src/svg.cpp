#include "aidrin/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>

#include "aidrin/error.hpp"

namespace aidrin {
namespace {

constexpr double kWidth = 720;
constexpr double kHeight = 480;
constexpr double kLeft = 90, kRight = 150, kTop = 50, kBottom = 90;
constexpr double kPlotW = kWidth - kLeft - kRight;
constexpr double kPlotH = kHeight - kTop - kBottom;

constexpr const char* kPalette[] = {"#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f",
                                    "#edc948", "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac"};

const char* color(std::size_t i) { return kPalette[i % std::size(kPalette)]; }

std::string escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string short_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

class Canvas {
 public:
  explicit Canvas(const ChartSpec& spec) {
    out_ = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) + "\" height=\"" +
           num(kHeight) + "\" viewBox=\"0 0 " + num(kWidth) + " " + num(kHeight) +
           "\" font-family=\"sans-serif\" font-size=\"11\">\n";
    out_ += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    text(kWidth / 2, 28, spec.title, "middle", 16);
    if (!spec.x_label.empty()) text(kLeft + kPlotW / 2, kHeight - 12, spec.x_label, "middle", 12);
    if (!spec.y_label.empty())
      out_ += "<text x=\"18\" y=\"" + num(kTop + kPlotH / 2) +
              "\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 18 " +
              num(kTop + kPlotH / 2) + ")\">" + escape(spec.y_label) + "</text>\n";
  }

  void text(double x, double y, std::string_view s, const char* anchor = "start",
            int size = 11, std::string_view extra = {}) {
    out_ += "<text x=\"" + num(x) + "\" y=\"" + num(y) + "\" text-anchor=\"" + anchor +
            "\" font-size=\"" + std::to_string(size) + "\"";
    if (!extra.empty()) out_ += " " + std::string(extra);
    out_ += ">" + escape(s) + "</text>\n";
  }

  void rect(double x, double y, double w, double h, std::string_view fill,
            std::string_view title = {}) {
    out_ += "<rect x=\"" + num(x) + "\" y=\"" + num(y) + "\" width=\"" + num(w) +
            "\" height=\"" + num(h) + "\" fill=\"" + std::string(fill) + "\"";
    if (title.empty()) {
      out_ += "/>\n";
    } else {
      out_ += "><title>" + escape(title) + "</title></rect>\n";
    }
  }

  void line(double x1, double y1, double x2, double y2, std::string_view stroke = "#333") {
    out_ += "<line x1=\"" + num(x1) + "\" y1=\"" + num(y1) + "\" x2=\"" + num(x2) + "\" y2=\"" +
            num(y2) + "\" stroke=\"" + std::string(stroke) + "\"/>\n";
  }

  void raw(std::string_view s) { out_ += s; }

  void legend(const std::vector<std::string>& names) {
    double y = kTop;
    for (std::size_t i = 0; i < names.size(); ++i, y += 18) {
      rect(kWidth - kRight + 15, y, 12, 12, color(i));
      text(kWidth - kRight + 32, y + 10, names[i]);
    }
  }

  std::string finish() { return out_ + "</svg>\n"; }

 private:
  std::string out_;
};

// Labels under the x axis, rotated when there are many of them.
void category_labels(Canvas& c, const std::vector<std::string>& labels, double slot) {
  const bool rotate = labels.size() > 6;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const double x = kLeft + slot * (static_cast<double>(i) + 0.5);
    const double y = kTop + kPlotH + 16;
    if (rotate)
      c.text(x, y, labels[i], "end", 10, "transform=\"rotate(-40 " + num(x) + " " + num(y) + ")\"");
    else
      c.text(x, y, labels[i], "middle", 10);
  }
}

void value_axis(Canvas& c, double lo, double hi, bool horizontal) {
  for (int t = 0; t <= 4; ++t) {
    const double f = t / 4.0;
    const double v = lo + (hi - lo) * f;
    if (horizontal) {
      const double x = kLeft + kPlotW * f;
      c.line(x, kTop + kPlotH, x, kTop + kPlotH + 4);
      c.text(x, kTop + kPlotH + 16, short_num(v), "middle", 10);
    } else {
      const double y = kTop + kPlotH - kPlotH * f;
      c.line(kLeft - 4, y, kLeft, y);
      c.text(kLeft - 6, y + 4, short_num(v), "end", 10);
    }
  }
}

void render_bars(Canvas& c, const ChartSpec& spec, bool gapless) {
  const std::size_t n = spec.labels.size();
  const std::size_t groups = spec.series.size();
  double max_value = 0;
  for (const auto& s : spec.series)
    for (double v : s.values) max_value = std::max(max_value, v);
  const double extent = spec.horizontal ? kPlotW : kPlotH;
  const double slot = (spec.horizontal ? kPlotH : kPlotW) / static_cast<double>(std::max<std::size_t>(n, 1));
  const double pad = gapless ? 0.0 : slot * 0.15;
  const double bar = (slot - 2 * pad) / static_cast<double>(groups);

  c.line(kLeft, kTop, kLeft, kTop + kPlotH);
  c.line(kLeft, kTop + kPlotH, kLeft + kPlotW, kTop + kPlotH);
  value_axis(c, 0, max_value, spec.horizontal);

  for (std::size_t g = 0; g < groups; ++g) {
    const auto lengths = bar_heights(spec.series[g].values, extent);
    for (std::size_t i = 0; i < n; ++i) {
      const double offset = slot * static_cast<double>(i) + pad + bar * static_cast<double>(g);
      const std::string tip = spec.labels[i] + ": " + short_num(spec.series[g].values[i]);
      if (spec.horizontal)
        c.rect(kLeft, kTop + offset, lengths[i], bar, color(g), tip);
      else
        c.rect(kLeft + offset, kTop + kPlotH - lengths[i], bar, lengths[i], color(g), tip);
    }
  }
  if (spec.horizontal) {
    for (std::size_t i = 0; i < n; ++i)
      c.text(kLeft - 6, kTop + slot * (static_cast<double>(i) + 0.5) + 4, spec.labels[i], "end", 10);
  } else {
    category_labels(c, spec.labels, slot);
  }
  if (groups > 1) {
    std::vector<std::string> names;
    for (const auto& s : spec.series) names.push_back(s.name);
    c.legend(names);
  }
}

void render_pie(Canvas& c, const ChartSpec& spec) {
  const auto& values = spec.series[0].values;
  const auto angles = pie_angles(values);
  const double cx = kLeft + kPlotW / 2, cy = kTop + kPlotH / 2;
  const double r = std::min(kPlotW, kPlotH) / 2;
  double total = 0;
  for (double v : values) total += v;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const auto [a0, a1] = angles[i];
    if (a1 <= a0) continue;
    const std::string tip = spec.labels[i] + ": " + short_num(100.0 * values[i] / total) + "%";
    if (a1 - a0 >= 2 * std::numbers::pi - 1e-12) {
      c.raw("<circle cx=\"" + num(cx) + "\" cy=\"" + num(cy) + "\" r=\"" + num(r) + "\" fill=\"" +
            color(i) + "\"><title>" + escape(tip) + "</title></circle>\n");
      continue;
    }
    const double x0 = cx + r * std::sin(a0), y0 = cy - r * std::cos(a0);
    const double x1 = cx + r * std::sin(a1), y1 = cy - r * std::cos(a1);
    const int large = (a1 - a0) > std::numbers::pi ? 1 : 0;
    c.raw("<path d=\"M " + num(cx) + " " + num(cy) + " L " + num(x0) + " " + num(y0) + " A " +
          num(r) + " " + num(r) + " 0 " + std::to_string(large) + " 1 " + num(x1) + " " + num(y1) +
          " Z\" fill=\"" + color(i) + "\" stroke=\"white\"><title>" + escape(tip) +
          "</title></path>\n");
  }
  std::vector<std::string> names;
  for (std::size_t i = 0; i < values.size(); ++i)
    names.push_back(spec.labels[i] + " (" + short_num(total > 0 ? 100.0 * values[i] / total : 0) + "%)");
  c.legend(names);
}

std::string heat_color(double v, double lo, double hi) {
  if (std::isnan(v)) return "#dddddd";
  double t = hi > lo ? (v - lo) / (hi - lo) : 0.5;
  t = std::clamp(t, 0.0, 1.0);
  // blue at the low end, white in the middle, red at the high end
  int r, g, b;
  if (t < 0.5) {
    const double s = t / 0.5;
    r = static_cast<int>(59 + s * (255 - 59));
    g = static_cast<int>(76 + s * (255 - 76));
    b = static_cast<int>(192 + s * (255 - 192));
  } else {
    const double s = (t - 0.5) / 0.5;
    r = static_cast<int>(255 - s * (255 - 180));
    g = static_cast<int>(255 - s * 255);
    b = static_cast<int>(255 - s * (255 - 38));
  }
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, b);
  return buf;
}

void render_heatmap(Canvas& c, const ChartSpec& spec) {
  double lo = 0, hi = 1;
  for (const auto& s : spec.series)
    for (double v : s.values)
      if (v < 0) lo = -1;
  const std::size_t rows = spec.series.size(), cols = spec.labels.size();
  const double cw = kPlotW / static_cast<double>(cols), ch = kPlotH / static_cast<double>(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    c.text(kLeft - 6, kTop + ch * (static_cast<double>(i) + 0.5) + 4, spec.series[i].name, "end", 10);
    for (std::size_t j = 0; j < cols; ++j) {
      const double v = spec.series[i].values[j];
      const double x = kLeft + cw * static_cast<double>(j), y = kTop + ch * static_cast<double>(i);
      const std::string shown = std::isnan(v) ? "n/a" : num(v);
      c.rect(x, y, cw, ch, heat_color(v, lo, hi),
             spec.series[i].name + " / " + spec.labels[j] + ": " + shown);
      if (cols <= 20) c.text(x + cw / 2, y + ch / 2 + 4, shown, "middle", cols > 10 ? 8 : 10);
    }
  }
  category_labels(c, spec.labels, cw);
}

void render_box(Canvas& c, const ChartSpec& spec) {
  double lo = spec.series[0].values.front(), hi = spec.series[0].values.back();
  for (const auto& s : spec.series) {
    lo = std::min(lo, s.values.front());
    hi = std::max(hi, s.values.back());
  }
  if (hi <= lo) hi = lo + 1;
  auto y_of = [&](double v) { return kTop + kPlotH - (v - lo) / (hi - lo) * kPlotH; };
  c.line(kLeft, kTop, kLeft, kTop + kPlotH);
  c.line(kLeft, kTop + kPlotH, kLeft + kPlotW, kTop + kPlotH);
  value_axis(c, lo, hi, false);
  const double slot = kPlotW / static_cast<double>(spec.series.size());
  for (std::size_t i = 0; i < spec.series.size(); ++i) {
    const auto& q = spec.series[i].values;
    const double cx = kLeft + slot * (static_cast<double>(i) + 0.5);
    const double half = slot * 0.3;
    c.line(cx, y_of(q[0]), cx, y_of(q[1]));
    c.line(cx, y_of(q[3]), cx, y_of(q[4]));
    c.line(cx - half / 2, y_of(q[0]), cx + half / 2, y_of(q[0]));
    c.line(cx - half / 2, y_of(q[4]), cx + half / 2, y_of(q[4]));
    c.rect(cx - half, y_of(q[3]), 2 * half, std::max(y_of(q[1]) - y_of(q[3]), 1.0), color(i),
           spec.labels[i] + ": median " + short_num(q[2]));
    c.line(cx - half, y_of(q[2]), cx + half, y_of(q[2]), "#000");
  }
  category_labels(c, spec.labels, slot);
}

void render_scatter(Canvas& c, const ChartSpec& spec) {
  const auto& xs = spec.series[0].values;
  const auto& ys = spec.series[1].values;
  c.line(kLeft, kTop, kLeft, kTop + kPlotH);
  c.line(kLeft, kTop + kPlotH, kLeft + kPlotW, kTop + kPlotH);
  if (xs.empty()) return;
  const auto [xmin, xmax] = std::minmax_element(xs.begin(), xs.end());
  const auto [ymin, ymax] = std::minmax_element(ys.begin(), ys.end());
  const double x0 = *xmin, x1 = *xmax > *xmin ? *xmax : *xmin + 1;
  const double y0 = *ymin, y1 = *ymax > *ymin ? *ymax : *ymin + 1;
  value_axis(c, y0, y1, false);
  for (int t = 0; t <= 4; ++t) {
    const double x = kLeft + kPlotW * t / 4.0;
    c.text(x, kTop + kPlotH + 16, short_num(x0 + (x1 - x0) * t / 4.0), "middle", 10);
  }
  const std::size_t stride = (xs.size() + kMaxScatterPoints - 1) / kMaxScatterPoints;
  std::string dots = "<g fill=\"" + std::string(color(0)) + "\" fill-opacity=\"0.5\">\n";
  for (std::size_t i = 0; i < xs.size(); i += stride) {
    dots += "<circle cx=\"" + num(kLeft + (xs[i] - x0) / (x1 - x0) * kPlotW) + "\" cy=\"" +
            num(kTop + kPlotH - (ys[i] - y0) / (y1 - y0) * kPlotH) + "\" r=\"2\"/>\n";
  }
  c.raw(dots + "</g>\n");
}

}  // namespace

std::vector<std::pair<double, double>> pie_angles(std::span<const double> values) {
  double total = 0;
  for (double v : values) total += v;
  std::vector<std::pair<double, double>> out;
  double acc = 0;
  for (double v : values) {
    const double start = total > 0 ? 2 * std::numbers::pi * acc / total : 0.0;
    acc += v;
    const double end = total > 0 ? 2 * std::numbers::pi * acc / total : 0.0;
    out.emplace_back(start, end);
  }
  return out;
}

std::vector<double> bar_heights(std::span<const double> values, double extent) {
  double max_value = 0;
  for (double v : values) max_value = std::max(max_value, v);
  std::vector<double> out;
  for (double v : values) out.push_back(max_value > 0 && v > 0 ? v / max_value * extent : 0.0);
  return out;
}

std::string render_svg(const ChartSpec& spec) {
  validate(spec);
  Canvas c(spec);
  switch (spec.kind) {
    case ChartKind::Bar: render_bars(c, spec, false); break;
    case ChartKind::Histogram: render_bars(c, spec, true); break;
    case ChartKind::Pie: render_pie(c, spec); break;
    case ChartKind::Heatmap: render_heatmap(c, spec); break;
    case ChartKind::Box: render_box(c, spec); break;
    case ChartKind::Scatter: render_scatter(c, spec); break;
  }
  return c.finish();
}

void write_svg(const ChartSpec& spec, const std::filesystem::path& path) {
  const std::string doc = render_svg(spec);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write chart to " + path.string());
  out << doc;
  if (!out) throw Error("failed writing chart to " + path.string());
}

}  // namespace aidrin
