#pragma once

#include <memory>

#include <Eigen/SparseCore>

#include "nrics/core/grid.hpp"
#include "nrics/core/permittivity.hpp"
#include "nrics/fdfd/pml.hpp"

namespace nrics {

using SparseMatrixC = Eigen::SparseMatrix<cplx, Eigen::ColMajor, int>;

/// Five-point discretisation of the stretched-coordinate Helmholtz operator
/// sx*sy*(d/dx (1/sx) d/dx + d/dy (1/sy) d/dy + k^2), which is complex symmetric.
/// Outside the absorbing layer it reduces to laplacian + k^2. The field is
/// zero beyond the last cell.
class HelmholtzOperator {
 public:
  const Grid2D& grid() const noexcept { return grid_; }
  double omega() const noexcept { return omega_; }
  const PMLConfig& pml() const noexcept { return pml_; }
  const SparseMatrixC& matrix() const noexcept { return matrix_; }
  /// sx * sy at each cell; scales a point source placed at that cell.
  cplx source_scale(std::size_t n) const noexcept { return source_scale_[n]; }

  /// True when the cell lies in the absorbing layer.
  bool in_pml(CellIndex c) const noexcept;

 private:
  friend HelmholtzOperator assemble(const ComplexPermittivityMap&, double, const PMLConfig&);
  HelmholtzOperator(Grid2D grid, double omega, PMLConfig pml)
      : grid_(grid), omega_(omega), pml_(pml) {}

  Grid2D grid_;
  double omega_;
  PMLConfig pml_;
  SparseMatrixC matrix_;
  std::vector<cplx> source_scale_;
};

/// Throws ConfigurationError if `omega` differs from the map's frequency or the
/// grid cannot hold the absorbing layer plus an 8-cell interior.
HelmholtzOperator assemble(const ComplexPermittivityMap& eps_map, double omega,
                           const PMLConfig& pml = {});

/// Checks that every cell of `region` sits at least a quarter of the shortest
/// wavelength present in `eps_map` away from the absorbing layer.
void check_margin(const ComplexPermittivityMap& eps_map, const CellMask& region,
                  const PMLConfig& pml);

}  // namespace nrics
