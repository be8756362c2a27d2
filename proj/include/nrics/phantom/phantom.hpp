#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nrics/core/permittivity.hpp"
#include "nrics/phantom/debye.hpp"
#include "nrics/phantom/tissue_map.hpp"

namespace nrics {

struct LesionSpec {
  Point2 center;
  double radius = 6.0e-3;  // m
  DebyeTissue tissue = TissueLibrary{}.lesion;
};

/// Linear volume-fraction mix of fat and fibroglandular tissue for a cell with
/// `fat_percent` percent fat.
cplx composite_permittivity(double fat_percent, double omega, const DebyeTissue& fat,
                            const DebyeTissue& fibro);

/// Adds i.i.d. U(-amplitude, amplitude) percentage points to every breast
/// cell and clamps to [0, 100]. Deterministic for a given seed.
TissueMap corrupt_fat_map(const TissueMap& t, double amplitude, std::uint64_t seed);

/// Healthy medium: composite model on breast cells, fixed tissues elsewhere.
ComplexPermittivityMap build_background(const TissueMap& t, double omega,
                                        const TissueLibrary& lib = {});

/// Uniform bolus over the whole grid.
ComplexPermittivityMap build_bolus_only(const Grid2D& grid, double omega,
                                        const TissueLibrary& lib = {});

/// Cells whose centre lies inside the lesion disk (boundary inclusive).
std::vector<std::size_t> rasterize_disk(const Grid2D& grid, Point2 center, double radius);

struct LesionInsertion {
  ComplexPermittivityMap medium;
  std::vector<std::size_t> cells;
  std::optional<std::string> warning;
};

/// Replaces the rasterized lesion cells of `eps_map` with the lesion tissue.
/// Throws PlacementError if any part of the disk leaves breast tissue.
LesionInsertion insert_lesion(const TissueMap& t, const ComplexPermittivityMap& eps_map,
                              const LesionSpec& lesion, double omega);

}  // namespace nrics
