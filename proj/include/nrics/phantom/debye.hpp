#pragma once

#include "nrics/core/permittivity.hpp"

namespace nrics {

/// Single-pole Debye medium with static conductivity:
///   eps(w) = eps_inf + delta_eps / (1 - j w tau) + j sigma_s / (w eps0)
struct DebyeTissue {
  double eps_inf = 1.0;
  double delta_eps = 0.0;
  double tau = 1e-12;      // s
  double sigma_s = 0.0;    // S/m

  /// Throws InvariantError unless eps_inf >= 1, delta_eps >= 0, tau > 0, sigma_s >= 0.
  void validate() const;
  cplx evaluate(double omega) const;
};

/// Constitutive models for every label plus the lesion. Defaults are
/// literature-style breast tissue fits, not measured values.
struct TissueLibrary {
  DebyeTissue fat{3.14, 1.61, 14.0e-12, 0.036};
  DebyeTissue fibroglandular{13.81, 35.6, 14.0e-12, 0.74};
  DebyeTissue skin{15.3, 24.8, 13.0e-12, 0.74};
  DebyeTissue muscle{21.7, 33.2, 13.2e-12, 0.89};
  DebyeTissue bolus{10.0, 0.0, 1.0e-12, 0.05};
  /// About 10% above fibroglandular tissue across 0.5-0.7 GHz.
  DebyeTissue lesion{15.19, 39.16, 13.4e-12, 0.814};

  void validate() const;
};

}  // namespace nrics
