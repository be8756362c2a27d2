#pragma once

#include <complex>
#include <span>
#include <vector>

#include "nrics/core/grid.hpp"

namespace nrics {

using cplx = std::complex<double>;

inline constexpr double kEps0 = 8.8541878128e-12;
inline constexpr double kMu0 = 1.25663706212e-6;

/// Tolerance on the passivity invariant Re >= 1, Im >= 0.
inline constexpr double kPassivityTol = 1e-12;

/// k^2 = omega^2 mu0 eps0 eps for a relative permittivity eps.
inline cplx wavenumber_squared(cplx eps, double omega) {
  return omega * omega * kMu0 * kEps0 * eps;
}

/// Per-cell complex relative permittivity eps_r + j sigma / (omega eps0),
/// exp(-j omega t) convention.
class ComplexPermittivityMap {
 public:
  ComplexPermittivityMap(Grid2D grid, double omega, std::vector<cplx> eps);
  static ComplexPermittivityMap uniform(const Grid2D& grid, double omega, cplx value);

  const Grid2D& grid() const noexcept { return grid_; }
  double omega() const noexcept { return omega_; }
  std::span<const cplx> values() const noexcept { return eps_; }
  cplx operator[](std::size_t n) const noexcept { return eps_[n]; }

  /// Copy with selected cells replaced; the result is revalidated.
  ComplexPermittivityMap with_cells(std::span<const std::size_t> cells, cplx value) const;

 private:
  Grid2D grid_;
  double omega_;
  std::vector<cplx> eps_;
};

/// Contrast (eps - eps_b) / eps_b on the inversion support.
class ContrastImage {
 public:
  ContrastImage(Grid2D grid, CellMask support, std::vector<cplx> x);
  static ContrastImage zeros(Grid2D grid, CellMask support);

  const Grid2D& grid() const noexcept { return grid_; }
  const CellMask& support() const noexcept { return support_; }
  /// Linear grid index of each unknown.
  std::span<const std::size_t> cells() const noexcept { return cells_; }
  std::span<const cplx> values() const noexcept { return x_; }
  std::size_t size() const noexcept { return x_.size(); }

  /// Dense per-cell copy with zeros off the support.
  std::vector<cplx> to_grid() const;

 private:
  Grid2D grid_;
  CellMask support_;
  std::vector<std::size_t> cells_;
  std::vector<cplx> x_;
};

ContrastImage contrast_from_permittivity(const ComplexPermittivityMap& eps,
                                         const ComplexPermittivityMap& eps_b,
                                         const CellMask& support);

ComplexPermittivityMap permittivity_from_contrast(const ContrastImage& x,
                                                  const ComplexPermittivityMap& eps_b);

/// Background values on the support cells of `support`, in support order.
std::vector<cplx> restrict_to(const ComplexPermittivityMap& eps, const CellMask& support);

}  // namespace nrics
