#include "aidrin/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>

#include "aidrin/error.hpp"

namespace aidrin {

std::optional<double> pearson(const Column& x, const Column& y) {
  if (!x.is_numeric() || !y.is_numeric())
    throw Error("Pearson correlation needs numeric columns");
  auto xv = x.raw_values();
  auto yv = y.raw_values();
  double sx = 0, sy = 0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < xv.size(); ++i) {
    if (std::isnan(xv[i]) || std::isnan(yv[i])) continue;
    sx += xv[i];
    sy += yv[i];
    ++n;
  }
  if (n < 2) return std::nullopt;
  const double mx = sx / static_cast<double>(n);
  const double my = sy / static_cast<double>(n);
  double sxx = 0, syy = 0, sxy = 0;
  for (std::size_t i = 0; i < xv.size(); ++i) {
    if (std::isnan(xv[i]) || std::isnan(yv[i])) continue;
    const double dx = xv[i] - mx, dy = yv[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx == 0.0 || syy == 0.0) return std::nullopt;
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

CorrelationMatrix pearson_matrix(const Dataset& ds) {
  CorrelationMatrix m;
  m.kind = CorrelationKind::Pearson;
  std::vector<const Column*> cols;
  for (std::size_t i = 0; i < ds.column_count(); ++i)
    if (ds.column(i).is_numeric()) cols.push_back(&ds.column(i));
  if (cols.size() < 2) throw Error("Pearson matrix needs at least two numeric columns");

  const std::size_t n = cols.size();
  for (const Column* c : cols) m.labels.push_back(c->name());
  m.values.assign(n, std::vector<std::optional<double>>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      auto r = pearson(*cols[i], *cols[j]);
      if (i == j && r) r = 1.0;
      if (!r && i != j)
        m.warnings.push_back("Pearson(\"" + m.labels[i] + "\", \"" + m.labels[j] +
                             "\") undefined: fewer than two rows or zero variance");
      m.values[i][j] = r;
      m.values[j][i] = r;
    }
  }
  return m;
}

namespace {

double entropy_from_counts(const std::vector<std::size_t>& counts, double n) {
  double h = 0.0;
  for (std::size_t c : counts) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / n;
    h -= p * std::log(p);
  }
  return h;
}

}  // namespace

double theils_u(const Column& x, const Column& y) {
  if (!x.is_categorical() || !y.is_categorical())
    throw Error("Theil's U needs categorical columns");
  auto xc = x.codes();
  auto yc = y.codes();
  const std::size_t kx = x.levels().size(), ky = y.levels().size();
  std::vector<std::size_t> cx(kx, 0), cy(ky, 0);
  // Dense joint table when it is small, sparse otherwise.
  const bool dense = kx * ky <= (std::size_t{1} << 22);
  std::vector<std::size_t> joint_dense(dense ? kx * ky : 0, 0);
  std::map<std::pair<std::int32_t, std::int32_t>, std::size_t> joint_sparse;
  std::size_t n = 0;
  for (std::size_t i = 0; i < xc.size(); ++i) {
    if (xc[i] == Column::kMissingCode || yc[i] == Column::kMissingCode) continue;
    const auto a = static_cast<std::size_t>(xc[i]), b = static_cast<std::size_t>(yc[i]);
    ++cx[a];
    ++cy[b];
    if (dense)
      ++joint_dense[a * ky + b];
    else
      ++joint_sparse[{xc[i], yc[i]}];
    ++n;
  }
  if (n == 0) throw Error("Theil's U: no rows with both \"" + x.name() + "\" and \"" +
                          y.name() + "\" present");
  const double total = static_cast<double>(n);
  const double hx = entropy_from_counts(cx, total);
  if (hx == 0.0) return 1.0;
  double hx_given_y = 0.0;
  auto accumulate = [&](std::size_t b, std::size_t c) {
    const double pxy = static_cast<double>(c) / total;
    hx_given_y -= pxy * std::log(static_cast<double>(c) / static_cast<double>(cy[b]));
  };
  if (dense) {
    for (std::size_t a = 0; a < kx; ++a)
      for (std::size_t b = 0; b < ky; ++b)
        if (auto c = joint_dense[a * ky + b]) accumulate(b, c);
  } else {
    for (const auto& [key, c] : joint_sparse) accumulate(static_cast<std::size_t>(key.second), c);
  }
  return std::clamp((hx - hx_given_y) / hx, 0.0, 1.0);
}

CorrelationMatrix theils_u_matrix(const Dataset& ds) {
  CorrelationMatrix m;
  m.kind = CorrelationKind::TheilsU;
  std::vector<const Column*> cols;
  for (std::size_t i = 0; i < ds.column_count(); ++i)
    if (ds.column(i).is_categorical() && ds.column(i).non_missing_count() > 0)
      cols.push_back(&ds.column(i));
  if (cols.size() < 2) throw Error("Theil's U matrix needs at least two categorical columns");

  const std::size_t n = cols.size();
  for (const Column* c : cols) m.labels.push_back(c->name());
  m.values.assign(n, std::vector<std::optional<double>>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) {
        m.values[i][j] = 1.0;
        continue;
      }
      try {
        m.values[i][j] = theils_u(*cols[i], *cols[j]);
      } catch (const Error& e) {
        m.warnings.push_back(e.what());
      }
    }
  }
  return m;
}

}  // namespace aidrin
