#include "nrics/harness/metric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nrics/core/error.hpp"

namespace nrics {

CellMask dilate(const Grid2D& grid, const CellMask& mask, int steps) {
  CellMask cur = mask;
  for (int s = 0; s < steps; ++s) {
    CellMask next = cur;
    for (int j = 0; j < grid.ny(); ++j) {
      for (int i = 0; i < grid.nx(); ++i) {
        if (!cur[grid.linear({i, j})]) continue;
        for (int dj = -1; dj <= 1; ++dj) {
          for (int di = -1; di <= 1; ++di) {
            const CellIndex c{i + di, j + dj};
            if (grid.in_bounds(c)) next.set(grid.linear(c));
          }
        }
      }
    }
    cur = std::move(next);
  }
  return cur;
}

LocalizationResult localization_metric(const ContrastImage& x, const CellMask& lesion,
                                       double threshold) {
  const Grid2D& g = x.grid();
  if (lesion.size() != g.size()) throw ConfigurationError("localization: mask/grid mismatch");
  if (lesion.count() == 0) throw DomainError("localization: empty lesion mask");

  const CellMask near = dilate(g, lesion, 2);
  const auto cells = x.cells();
  const auto v = x.values();
  double in = 0.0, out = 0.0, peak = 0.0;
  for (std::size_t k = 0; k < cells.size(); ++k) {
    const double a = std::abs(v[k]);
    if (near[cells[k]]) {
      in = std::max(in, a);
    } else {
      out = std::max(out, a);
    }
    peak = std::max(peak, a);
  }

  LocalizationResult r;
  if (out > 0.0) {
    r.peak_in_ratio = std::min(in / out, kRatioCap);
  } else {
    r.peak_in_ratio = in > 0.0 ? kRatioCap : 0.0;
  }
  r.success = r.peak_in_ratio >= threshold;

  double lx = 0, ly = 0;
  const auto lcells = lesion.indices();
  for (auto n : lcells) {
    lx += g.cell(n).i;
    ly += g.cell(n).j;
  }
  lx /= static_cast<double>(lcells.size());
  ly /= static_cast<double>(lcells.size());
  if (peak == 0.0) {
    r.centroid_error_cells = std::numeric_limits<double>::infinity();
    return r;
  }
  double cx = 0, cy = 0, cnt = 0;
  for (std::size_t k = 0; k < cells.size(); ++k) {
    if (std::abs(v[k]) >= kCentroidFraction * peak) {
      cx += g.cell(cells[k]).i;
      cy += g.cell(cells[k]).j;
      cnt += 1;
    }
  }
  r.centroid_error_cells = std::hypot(cx / cnt - lx, cy / cnt - ly);
  return r;
}

}  // namespace nrics
