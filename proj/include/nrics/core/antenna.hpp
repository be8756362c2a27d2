#pragma once

#include <span>
#include <vector>

#include "nrics/core/grid.hpp"

namespace nrics {

/// Monostatic point antennas; each one transmits and receives.
class AntennaArray {
 public:
  explicit AntennaArray(std::vector<Point2> positions);

  std::size_t size() const noexcept { return positions_.size(); }
  const Point2& position(std::size_t a) const { return positions_.at(a); }
  std::span<const Point2> positions() const noexcept { return positions_; }

  /// Grid cell of each antenna. Throws ConfigurationError when an antenna lies
  /// outside the grid or within `border` cells of its edge.
  std::vector<CellIndex> cells(const Grid2D& grid, int border = 0) const;

 private:
  std::vector<Point2> positions_;
};

}  // namespace nrics
