#include "nrics/fdfd/field.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <string>

#include <Eigen/SparseLU>

#include "nrics/core/error.hpp"

namespace nrics {

struct HelmholtzSolver::Impl {
  Eigen::SparseLU<SparseMatrixC, Eigen::COLAMDOrdering<int>> lu;
};

HelmholtzSolver::HelmholtzSolver(HelmholtzOperator op)
    : op_(std::move(op)), impl_(std::make_unique<Impl>()) {
  impl_->lu.analyzePattern(op_.matrix());
  impl_->lu.factorize(op_.matrix());
  if (impl_->lu.info() != Eigen::Success) {
    throw SolverError("sparse LU factorisation failed: " + impl_->lu.lastErrorMessage());
  }
}

HelmholtzSolver::~HelmholtzSolver() = default;
HelmholtzSolver::HelmholtzSolver(HelmholtzSolver&&) noexcept = default;
HelmholtzSolver& HelmholtzSolver::operator=(HelmholtzSolver&&) noexcept = default;

FieldSolution HelmholtzSolver::solve_source(CellIndex source, cplx amplitude) const {
  const Grid2D& g = op_.grid();
  if (!g.in_bounds(source) || op_.in_pml(source)) {
    throw ConfigurationError("source cell (" + std::to_string(source.i) + ", " +
                             std::to_string(source.j) + ") is not in the physical region");
  }
  const auto n = g.linear(source);
  Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(g.size()));
  rhs[static_cast<Eigen::Index>(n)] = -amplitude * op_.source_scale(n) / g.cell_area();
  Eigen::VectorXcd e = impl_->lu.solve(rhs);
  if (impl_->lu.info() != Eigen::Success || !e.allFinite()) {
    throw SolverError("sparse LU solve failed");
  }
  const double residual = (op_.matrix() * e - rhs).norm() / rhs.norm();
  if (!(residual < 1e-8)) {
    throw SolverError("ill-conditioned Helmholtz system: relative residual " +
                      std::to_string(residual));
  }
  FieldSolution out{g, op_.omega(), source, amplitude, {}};
  out.values.assign(e.data(), e.data() + e.size());
  return out;
}

std::vector<cplx> green_row(const FieldSolution& antenna_field, const CellMask& support) {
  const Grid2D& g = antenna_field.grid;
  if (support.size() != g.size()) throw ConfigurationError("green_row: mask size mismatch");
  if (support[g.linear(antenna_field.source)]) {
    throw ConfigurationError("green_row: antenna lies on the inversion support");
  }
  std::vector<cplx> row;
  row.reserve(support.count());
  for (std::size_t n = 0; n < g.size(); ++n) {
    if (support[n]) row.push_back(antenna_field.values[n] / antenna_field.amplitude);
  }
  return row;
}

std::vector<cplx> green_row(const HelmholtzSolver& background, CellIndex antenna,
                            const CellMask& support) {
  return green_row(background.solve_source(antenna), support);
}

cplx scattered_field(const FieldSolution& total, const FieldSolution& background) {
  if (!(total.grid == background.grid) || total.omega != background.omega ||
      !(total.source == background.source) || total.amplitude != background.amplitude) {
    throw ConfigurationError("scattered_field: total and background solutions do not match");
  }
  return total.at(total.source) - background.at(background.source);
}

void write_field_csv(const FieldSolution& field, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << "cell,real,imag\n" << std::setprecision(17);
  for (std::size_t n = 0; n < field.values.size(); ++n) {
    out << n << ',' << field.values[n].real() << ',' << field.values[n].imag() << '\n';
  }
}

}  // namespace nrics
