#include "nrics/core/permittivity.hpp"

#include <cmath>
#include <string>

#include "nrics/core/error.hpp"

namespace nrics {

namespace {

void check_passive(std::span<const cplx> eps) {
  for (std::size_t n = 0; n < eps.size(); ++n) {
    const cplx e = eps[n];
    if (!std::isfinite(e.real()) || !std::isfinite(e.imag()) || e.real() < 1.0 - kPassivityTol ||
        e.imag() < -kPassivityTol) {
      throw InvariantError("permittivity at cell " + std::to_string(n) +
                           " is not passive (need Re >= 1, Im >= 0)");
    }
  }
}

}  // namespace

ComplexPermittivityMap::ComplexPermittivityMap(Grid2D grid, double omega, std::vector<cplx> eps)
    : grid_(grid), omega_(omega), eps_(std::move(eps)) {
  if (eps_.size() != grid_.size()) {
    throw ConfigurationError("permittivity map size does not match grid");
  }
  if (!(omega_ > 0.0)) throw ConfigurationError("permittivity map needs omega > 0");
  check_passive(eps_);
}

ComplexPermittivityMap ComplexPermittivityMap::uniform(const Grid2D& grid, double omega,
                                                       cplx value) {
  return {grid, omega, std::vector<cplx>(grid.size(), value)};
}

ComplexPermittivityMap ComplexPermittivityMap::with_cells(std::span<const std::size_t> cells,
                                                          cplx value) const {
  auto eps = eps_;
  for (auto n : cells) eps.at(n) = value;
  return {grid_, omega_, std::move(eps)};
}

ContrastImage::ContrastImage(Grid2D grid, CellMask support, std::vector<cplx> x)
    : grid_(grid), support_(std::move(support)), x_(std::move(x)) {
  if (support_.size() != grid_.size()) {
    throw ConfigurationError("support mask size does not match grid");
  }
  cells_ = support_.indices();
  if (cells_.size() != x_.size()) {
    throw ConfigurationError("contrast length " + std::to_string(x_.size()) +
                             " differs from support size " + std::to_string(cells_.size()));
  }
}

ContrastImage ContrastImage::zeros(Grid2D grid, CellMask support) {
  const auto n = support.count();
  return {grid, std::move(support), std::vector<cplx>(n)};
}

std::vector<cplx> ContrastImage::to_grid() const {
  std::vector<cplx> out(grid_.size());
  for (std::size_t k = 0; k < cells_.size(); ++k) out[cells_[k]] = x_[k];
  return out;
}

ContrastImage contrast_from_permittivity(const ComplexPermittivityMap& eps,
                                         const ComplexPermittivityMap& eps_b,
                                         const CellMask& support) {
  if (!(eps.grid() == eps_b.grid()) || support.size() != eps.grid().size()) {
    throw ConfigurationError("contrast: grid mismatch");
  }
  if (eps.omega() != eps_b.omega()) throw ConfigurationError("contrast: frequency mismatch");
  std::vector<cplx> x;
  x.reserve(support.count());
  for (std::size_t n = 0; n < support.size(); ++n) {
    if (!support[n]) continue;
    const cplx b = eps_b[n];
    if (std::abs(b) == 0.0) {
      throw DegenerateBackgroundError("zero background permittivity at cell " + std::to_string(n));
    }
    x.push_back((eps[n] - b) / b);
  }
  return {eps.grid(), support, std::move(x)};
}

ComplexPermittivityMap permittivity_from_contrast(const ContrastImage& x,
                                                  const ComplexPermittivityMap& eps_b) {
  if (!(x.grid() == eps_b.grid())) throw ConfigurationError("permittivity: grid mismatch");
  std::vector<cplx> eps(eps_b.values().begin(), eps_b.values().end());
  const auto cells = x.cells();
  const auto v = x.values();
  for (std::size_t k = 0; k < cells.size(); ++k) {
    const cplx b = eps[cells[k]];
    eps[cells[k]] = b * v[k] + b;
  }
  return {eps_b.grid(), eps_b.omega(), std::move(eps)};
}

std::vector<cplx> restrict_to(const ComplexPermittivityMap& eps, const CellMask& support) {
  if (support.size() != eps.grid().size()) throw ConfigurationError("restrict: size mismatch");
  std::vector<cplx> out;
  out.reserve(support.count());
  for (std::size_t n = 0; n < support.size(); ++n) {
    if (support[n]) out.push_back(eps[n]);
  }
  return out;
}

}  // namespace nrics
