#include "nrics/core/grid.hpp"

#include <cmath>
#include <string>

#include "nrics/core/error.hpp"

namespace nrics {

Grid2D::Grid2D(int nx, int ny, double dx, double dy, Point2 origin)
    : nx_(nx), ny_(ny), dx_(dx), dy_(dy), origin_(origin) {
  if (nx < 8 || ny < 8) {
    throw ConfigurationError("grid needs at least 8 cells per axis, got " + std::to_string(nx) +
                             "x" + std::to_string(ny));
  }
  if (!(dx > 0.0) || !(dy > 0.0) || !std::isfinite(dx) || !std::isfinite(dy)) {
    throw ConfigurationError("grid cell size must be positive and finite");
  }
  if (!std::isfinite(origin.x) || !std::isfinite(origin.y)) {
    throw ConfigurationError("grid origin must be finite");
  }
}

std::optional<CellIndex> Grid2D::nearest_cell(Point2 p) const noexcept {
  const double fi = std::round((p.x - origin_.x) / dx_);
  const double fj = std::round((p.y - origin_.y) / dy_);
  if (!std::isfinite(fi) || !std::isfinite(fj)) return std::nullopt;
  const CellIndex c{static_cast<int>(fi), static_cast<int>(fj)};
  if (fi < 0 || fj < 0 || fi >= nx_ || fj >= ny_) return std::nullopt;
  return c;
}

std::size_t CellMask::count() const noexcept {
  std::size_t n = 0;
  for (auto b : bits_) n += b;
  return n;
}

std::vector<std::size_t> CellMask::indices() const {
  std::vector<std::size_t> out;
  out.reserve(count());
  for (std::size_t n = 0; n < bits_.size(); ++n) {
    if (bits_[n]) out.push_back(n);
  }
  return out;
}

}  // namespace nrics
