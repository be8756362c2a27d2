#pragma once

#include <cstdint>
#include <vector>

#include "nrics/phantom/tissue_map.hpp"

namespace nrics {

/// Geometry of the synthetic reference slice: a chest-wall muscle band on the
/// low-x side and a half-ellipse breast (skin shell included) protruding into
/// the bolus. Lengths are metres in physical coordinates, where the physical
/// region starts at (0, 0) just inside the absorbing layer.
struct PhantomGeometry {
  int physical_nx = 120;
  int physical_ny = 80;
  int pml_cells = 10;
  double cell = 1.25e-3;
  double chest_wall_x = 0.021;
  double breast_center_y = 0.05;
  double semi_axis_x = 0.08;
  double semi_axis_y = 0.03;
  double skin_thickness = 0.0025;
  /// Fibroglandular core (Gaussian bump lowering the fat fraction).
  Point2 gland_center{0.044, 0.05};
  double gland_sigma = 0.018;
  double fat_baseline = 85.0;
  double gland_depth = 80.0;
  double texture_amplitude = 12.0;
  double texture_correlation_cells = 4.0;
};

/// Seed of the shipped data/reference_phantom.txt.
inline constexpr std::uint64_t kReferencePhantomSeed = 28;

/// Antenna positions (m) of the reference experiment: six monostatic
/// antennas in the bolus around the breast.
std::vector<Point2> reference_antennas();

/// Deterministic synthetic fat-fraction slice.
TissueMap make_reference_phantom(const PhantomGeometry& g, std::uint64_t seed);

}  // namespace nrics
