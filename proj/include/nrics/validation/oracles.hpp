#pragma once

#include <cstdint>
#include <vector>

#include "nrics/core/dense.hpp"
#include "nrics/fdfd/pml.hpp"
#include "nrics/phantom/tissue_map.hpp"

// Reference computations that do not share code paths with the solvers they
// check. Used by the test suite and the validate-fdfd / selftest commands.
namespace nrics::oracle {

/// (j/4) H0^(1)(k r) for real k: field of the unit line source for
/// laplacian E + k^2 E = -delta.
cplx hankel_line_source(double k, double r);

struct HankelReport {
  double hz = 0.0;
  double rel_l2 = 0.0;
  std::size_t cells = 0;
  double seconds = 0.0;
};

/// Homogeneous lossless medium, source at the grid centre; compares over all
/// physical cells at least two cells from the source.
HankelReport hankel_check(double hz, double eps_r = 10.0, int nx = 140, int ny = 100,
                          double cell = 1.25e-3, const PMLConfig& pml = {});

struct PmlReport {
  double hz = 0.0;
  /// 20 log10(||E_ref|| / ||E - E_ref||) over the physical region, E_ref from
  /// a grid with a much larger physical region.
  double attenuation_db = 0.0;
  /// 20 log10 of max |E| over the physical region / max |E| on the outermost
  /// ring of absorbing cells.
  double edge_db = 0.0;
};
PmlReport pml_check(double hz, double eps_r = 10.0, int nx = 140, int ny = 100,
                    double cell = 1.25e-3, const PMLConfig& pml = {});

struct ReciprocityReport {
  double hz = 0.0;
  double max_rel_diff = 0.0;
  std::size_t pairs = 0;
};
/// Max over antenna pairs of |G(a, b) - G(b, a)| / |G(a, b)| on the
/// heterogeneous healthy medium of `phantom`.
ReciprocityReport reciprocity_check(const TissueMap& phantom, const std::vector<CellIndex>& antennas,
                                    double hz, const PMLConfig& pml = {});

struct BornReport {
  std::vector<double> alpha;
  /// ||A (alpha e_n) - y_fdfd|| / ||y_fdfd|| for each alpha.
  std::vector<double> rel_err;
  /// Least-squares slope of log(rel_err) against log(alpha).
  double slope = 0.0;
};
/// Single-cell contrast alpha at `cell` of the healthy medium, brute-force
/// FDFD scattered field against the Born operator built on that medium.
BornReport born_consistency(const TissueMap& phantom, const std::vector<CellIndex>& antennas,
                            const std::vector<double>& hz, std::size_t cell,
                            const std::vector<double>& alpha, const PMLConfig& pml = {});

/// min |x - z|^2 subject to Re(b x + b) >= 1, Im(b x + b) >= 0, solved by
/// enumerating the active sets of the two-variable QP.
cplx qp_project(cplx z, cplx b);

struct ProjectionReport {
  std::size_t instances = 0;
  double max_abs_diff = 0.0;
  double max_distance_gap = 0.0;
  double seconds = 0.0;
};
ProjectionReport projection_check(std::size_t instances, std::uint64_t seed);

/// Central differences of the objective over the stacked real coordinates.
std::vector<cplx> fd_gradient(const std::vector<cplx>& x, const CMatrix& a,
                              const std::vector<cplx>& y, double lambda, double mu, double h);

/// Two-term objective evaluated with plain loops.
double direct_objective(const std::vector<cplx>& x, const CMatrix& a, const std::vector<cplx>& y,
                        double lambda, double mu);

struct GradientReport {
  std::size_t points = 0;
  double max_rel_err = 0.0;
};
/// Random problem and points; relative error as ||g - g_fd|| / ||g_fd||.
GradientReport gradient_check(std::size_t points, std::uint64_t seed);

}  // namespace nrics::oracle
