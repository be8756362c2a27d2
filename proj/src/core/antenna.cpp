#include "nrics/core/antenna.hpp"

#include <cmath>
#include <string>

#include "nrics/core/error.hpp"

namespace nrics {

AntennaArray::AntennaArray(std::vector<Point2> positions) : positions_(std::move(positions)) {
  if (positions_.empty()) throw ConfigurationError("antenna array is empty");
  for (const auto& p : positions_) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw ConfigurationError("antenna position must be finite");
    }
  }
}

std::vector<CellIndex> AntennaArray::cells(const Grid2D& grid, int border) const {
  std::vector<CellIndex> out;
  out.reserve(positions_.size());
  for (std::size_t a = 0; a < positions_.size(); ++a) {
    auto c = grid.nearest_cell(positions_[a]);
    if (!c || c->i < border || c->j < border || c->i >= grid.nx() - border ||
        c->j >= grid.ny() - border) {
      throw ConfigurationError("antenna " + std::to_string(a) +
                               " lies outside the usable grid interior");
    }
    out.push_back(*c);
  }
  for (std::size_t a = 0; a < out.size(); ++a) {
    for (std::size_t b = a + 1; b < out.size(); ++b) {
      if (out[a] == out[b]) {
        throw ConfigurationError("antennas " + std::to_string(a) + " and " + std::to_string(b) +
                                 " share a grid cell");
      }
    }
  }
  return out;
}

}  // namespace nrics
