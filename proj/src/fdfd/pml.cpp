#include "nrics/fdfd/pml.hpp"

#include <algorithm>
#include <cmath>

#include "nrics/core/error.hpp"

namespace nrics {

void PMLConfig::validate() const {
  if (thickness < 8) throw ConfigurationError("PML thickness must be >= 8 cells");
  if (polynomial_order < 2 || polynomial_order > 4) {
    throw ConfigurationError("PML polynomial order must be 2, 3 or 4");
  }
  if (!(max_sigma > 0.0) || !std::isfinite(max_sigma)) {
    throw ConfigurationError("PML max_sigma must be positive");
  }
}

StretchProfile make_stretch(int n, double cell, double omega, const PMLConfig& pml) {
  const double t = pml.thickness;
  const double k0 = omega * std::sqrt(kMu0 * kEps0);
  const double scale = pml.max_sigma / (k0 * t * cell);
  // Positions in cell units; centres are integers, the inner layer faces sit at
  // t - 1/2 and n - t - 1/2.
  auto s = [&](double pos) {
    const double depth = std::max({t - 0.5 - pos, pos - (n - t - 0.5), 0.0});
    return cplx{1.0, scale * std::pow(depth / t, pml.polynomial_order)};
  };
  StretchProfile p;
  p.center.resize(n);
  p.face.resize(n + 1);
  for (int i = 0; i < n; ++i) p.center[i] = s(i);
  for (int i = 0; i <= n; ++i) p.face[i] = s(i - 0.5);
  return p;
}

}  // namespace nrics
