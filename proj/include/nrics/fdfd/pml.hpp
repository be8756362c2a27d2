#pragma once

#include <vector>

#include "nrics/core/permittivity.hpp"

namespace nrics {

/// Complex coordinate stretching s(d) = 1 + j * (max_sigma / (k0 L)) * (d / L)^order
/// over the outer `thickness` cells, with d the depth into the layer and L its
/// width. A plane wave crossing the layer once at normal incidence is attenuated
/// by exp(-sqrt(eps_r) * max_sigma / (order + 1)), independent of frequency.
struct PMLConfig {
  int thickness = 10;
  double max_sigma = 10.0;
  int polynomial_order = 3;

  /// Throws ConfigurationError unless thickness >= 8, order in {2,3,4}, max_sigma > 0.
  void validate() const;
};

/// Stretch factors along one axis of `n` cells: `center[i]` at cell centres and
/// `face[i]` at the face between cells i-1 and i (n + 1 faces).
struct StretchProfile {
  std::vector<cplx> center;
  std::vector<cplx> face;
};

StretchProfile make_stretch(int n, double cell, double omega, const PMLConfig& pml);

}  // namespace nrics
