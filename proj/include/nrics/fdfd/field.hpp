#pragma once

#include <filesystem>
#include <memory>
#include <span>
#include <vector>

#include "nrics/fdfd/helmholtz.hpp"

namespace nrics {

/// Complex E_z over the grid radiated by one point source.
struct FieldSolution {
  Grid2D grid;
  double omega = 0.0;
  CellIndex source;
  cplx amplitude{1.0, 0.0};
  std::vector<cplx> values;

  cplx at(CellIndex c) const { return values[grid.linear(c)]; }
};

/// Sparse LU factorisation of one operator, shared by every right-hand side at
/// that (medium, frequency).
class HelmholtzSolver {
 public:
  /// Throws SolverError when the factorisation fails.
  explicit HelmholtzSolver(HelmholtzOperator op);
  ~HelmholtzSolver();
  HelmholtzSolver(HelmholtzSolver&&) noexcept;
  HelmholtzSolver& operator=(HelmholtzSolver&&) noexcept;

  const HelmholtzOperator& op() const noexcept { return op_; }

  /// Solves op * E = -amplitude * delta(source) / (dx dy).
  /// Throws ConfigurationError for a source inside the absorbing layer and
  /// SolverError (with the relative residual) if the solve is inaccurate.
  FieldSolution solve_source(CellIndex source, cplx amplitude = 1.0) const;

 private:
  struct Impl;
  HelmholtzOperator op_;
  std::unique_ptr<Impl> impl_;
};

inline FieldSolution solve_source(const HelmholtzSolver& solver, CellIndex source,
                                  cplx amplitude = 1.0) {
  return solver.solve_source(source, amplitude);
}

/// Background Green's function G_b(r_a, r_n) on the support cells. By
/// reciprocity this is the field of a unit source at the antenna, so the same
/// solve doubles as the incident field E_b for that antenna.
std::vector<cplx> green_row(const FieldSolution& antenna_field, const CellMask& support);
std::vector<cplx> green_row(const HelmholtzSolver& background, CellIndex antenna,
                            const CellMask& support);

/// E - E_b at the transmitting cell (monostatic receive).
cplx scattered_field(const FieldSolution& total, const FieldSolution& background);

/// CSV with header `cell,real,imag`.
void write_field_csv(const FieldSolution& field, const std::filesystem::path& path);

}  // namespace nrics
