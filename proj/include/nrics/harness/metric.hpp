#pragma once

#include "nrics/core/permittivity.hpp"

namespace nrics {

inline constexpr double kRatioCap = 1e6;
/// Cells with |x| at or above this fraction of the peak form the blob whose
/// centroid is compared with the lesion. The true contrast of a uniform lesion
/// still varies about 2x with the background, so half maximum would cut it.
inline constexpr double kCentroidFraction = 0.25;

struct LocalizationResult {
  /// max |x| over the lesion dilated by 2 cells / max |x| elsewhere on the
  /// support, capped at kRatioCap.
  double peak_in_ratio = 0.0;
  bool success = false;
  /// Distance in cells between the lesion centroid and the centroid of the
  /// cells where |x| >= kCentroidFraction of its maximum. Infinite for an all-zero image.
  double centroid_error_cells = 0.0;
};

/// Dilation by `steps` cells with 8-connectivity.
CellMask dilate(const Grid2D& grid, const CellMask& mask, int steps);

/// Throws DomainError for an empty lesion mask, ConfigurationError when the
/// mask does not match the image grid.
LocalizationResult localization_metric(const ContrastImage& x, const CellMask& lesion,
                                       double threshold = 1.5);

}  // namespace nrics
