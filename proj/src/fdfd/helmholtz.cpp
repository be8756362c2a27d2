#include "nrics/fdfd/helmholtz.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "nrics/core/error.hpp"

namespace nrics {

bool HelmholtzOperator::in_pml(CellIndex c) const noexcept {
  const int t = pml_.thickness;
  return c.i < t || c.j < t || c.i >= grid_.nx() - t || c.j >= grid_.ny() - t;
}

HelmholtzOperator assemble(const ComplexPermittivityMap& eps_map, double omega,
                           const PMLConfig& pml) {
  pml.validate();
  if (omega != eps_map.omega()) {
    throw ConfigurationError("assemble: permittivity map was evaluated at another frequency");
  }
  const Grid2D& g = eps_map.grid();
  const int nx = g.nx(), ny = g.ny();
  if (nx < 2 * pml.thickness + 8 || ny < 2 * pml.thickness + 8) {
    throw ConfigurationError("assemble: grid " + std::to_string(nx) + "x" + std::to_string(ny) +
                             " too small for a " + std::to_string(pml.thickness) +
                             "-cell PML and an 8-cell interior");
  }

  const auto sx = make_stretch(nx, g.dx(), omega, pml);
  const auto sy = make_stretch(ny, g.dy(), omega, pml);
  const double idx2 = 1.0 / (g.dx() * g.dx());
  const double idy2 = 1.0 / (g.dy() * g.dy());

  HelmholtzOperator op(g, omega, pml);
  op.source_scale_.resize(g.size());
  std::vector<Eigen::Triplet<cplx, int>> trips;
  trips.reserve(5 * g.size());
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const auto n = static_cast<int>(g.linear({i, j}));
      const cplx sxy = sx.center[i] * sy.center[j];
      op.source_scale_[n] = sxy;
      // Coupling through the face to the right (i+1/2) and above (j+1/2).
      const cplx west = sy.center[j] / sx.face[i] * idx2;
      const cplx east = sy.center[j] / sx.face[i + 1] * idx2;
      const cplx south = sx.center[i] / sy.face[j] * idy2;
      const cplx north = sx.center[i] / sy.face[j + 1] * idy2;
      const cplx diag = sxy * wavenumber_squared(eps_map[n], omega) - west - east - south - north;
      trips.emplace_back(n, n, diag);
      if (i > 0) trips.emplace_back(n, n - 1, west);
      if (i + 1 < nx) trips.emplace_back(n, n + 1, east);
      if (j > 0) trips.emplace_back(n, n - nx, south);
      if (j + 1 < ny) trips.emplace_back(n, n + nx, north);
    }
  }
  op.matrix_.resize(static_cast<int>(g.size()), static_cast<int>(g.size()));
  op.matrix_.setFromTriplets(trips.begin(), trips.end());
  op.matrix_.makeCompressed();
  return op;
}

void check_margin(const ComplexPermittivityMap& eps_map, const CellMask& region,
                  const PMLConfig& pml) {
  const Grid2D& g = eps_map.grid();
  if (region.size() != g.size()) throw ConfigurationError("margin: mask size mismatch");
  double max_re_k = 0.0;
  for (auto e : eps_map.values()) {
    max_re_k = std::max(max_re_k, std::sqrt(wavenumber_squared(e, eps_map.omega())).real());
  }
  const double quarter_wave = 0.25 * 2.0 * std::numbers::pi / max_re_k;

  // Physical (non-PML) extent in metres.
  const double t = pml.thickness;
  const double x_lo = g.origin().x + (t - 0.5) * g.dx();
  const double x_hi = g.origin().x + (g.nx() - t - 0.5) * g.dx();
  const double y_lo = g.origin().y + (t - 0.5) * g.dy();
  const double y_hi = g.origin().y + (g.ny() - t - 0.5) * g.dy();
  double margin = std::numeric_limits<double>::infinity();
  for (std::size_t n = 0; n < g.size(); ++n) {
    if (!region[n]) continue;
    const auto p = g.center(n);
    margin = std::min({margin, p.x - x_lo, x_hi - p.x, p.y - y_lo, y_hi - p.y});
  }
  if (margin < quarter_wave) {
    throw ConfigurationError("grid too small: region sits " + std::to_string(margin * 1e3) +
                             " mm from the PML, need a quarter wavelength (" +
                             std::to_string(quarter_wave * 1e3) + " mm)");
  }
}

}  // namespace nrics
