#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "nrics/core/grid.hpp"

namespace nrics {

enum class Tissue : std::uint8_t { bolus = 0, skin = 1, muscle = 2, breast = 3 };

/// Segmented slice: a label per cell and a fat percentage on breast cells.
///
/// Invariants (checked on construction):
///  - fat percentage is finite and in [0, 100] on breast cells, and -1 elsewhere;
///  - no breast cell touches a bolus cell or the grid edge (4-neighbourhood),
///    i.e. skin or muscle encloses the breast.
class TissueMap {
 public:
  TissueMap(Grid2D grid, std::vector<Tissue> labels, std::vector<double> fat_percent);

  const Grid2D& grid() const noexcept { return grid_; }
  std::span<const Tissue> labels() const noexcept { return labels_; }
  Tissue label(std::size_t n) const noexcept { return labels_[n]; }
  /// Fat percentage of a breast cell; -1 for other tissue.
  double fat_percent(std::size_t n) const noexcept { return fat_[n]; }
  std::span<const double> fat_percent() const noexcept { return fat_; }

  /// Breast-labelled cells, i.e. the inversion support.
  CellMask breast_mask() const;
  CellMask mask_of(Tissue t) const;

  /// Same labels, new fat percentages (revalidated).
  TissueMap with_fat(std::vector<double> fat_percent) const;

 private:
  Grid2D grid_;
  std::vector<Tissue> labels_;
  std::vector<double> fat_;
};

/// Parses the plain-text phantom format:
///   header line `nx ny dx dy origin_x origin_y`, then nx*ny records
///   `label p` in linear cell order (x fastest). Lines starting with '#' are
///   comments. Throws ParseError or InvariantError.
TissueMap load_tissue_map(const std::filesystem::path& path);
void save_tissue_map(const TissueMap& t, const std::filesystem::path& path);

}  // namespace nrics
