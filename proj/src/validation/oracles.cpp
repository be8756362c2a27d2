#include "nrics/validation/oracles.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>

#include "nrics/core/error.hpp"
#include "nrics/fdfd/field.hpp"
#include "nrics/inversion/solver.hpp"
#include "nrics/phantom/phantom.hpp"
#include "nrics/sensing/measurements.hpp"

namespace nrics::oracle {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

FieldSolution homogeneous_field(double hz, double eps_r, int nx, int ny, double cell,
                                const PMLConfig& pml, CellIndex* src) {
  const double w = 2.0 * std::numbers::pi * hz;
  Grid2D g(nx, ny, cell, cell);
  auto eps = ComplexPermittivityMap::uniform(g, w, eps_r);
  HelmholtzSolver solver(assemble(eps, w, pml));
  *src = {nx / 2, ny / 2};
  return solver.solve_source(*src);
}

}  // namespace

cplx hankel_line_source(double k, double r) {
  const double x = k * r;
  return cplx(0.0, 0.25) * cplx(std::cyl_bessel_j(0.0, x), std::cyl_neumann(0.0, x));
}

HankelReport hankel_check(double hz, double eps_r, int nx, int ny, double cell,
                          const PMLConfig& pml) {
  const auto t0 = std::chrono::steady_clock::now();
  CellIndex src;
  const auto field = homogeneous_field(hz, eps_r, nx, ny, cell, pml, &src);
  const double w = 2.0 * std::numbers::pi * hz;
  const double k = w * std::sqrt(kMu0 * kEps0 * eps_r);
  const int t = pml.thickness;
  double num = 0.0, den = 0.0;
  std::size_t count = 0;
  for (int j = t; j < ny - t; ++j) {
    for (int i = t; i < nx - t; ++i) {
      const double r = cell * std::hypot(i - src.i, j - src.j);
      if (r < 2.0 * cell) continue;
      const cplx ref = hankel_line_source(k, r);
      num += std::norm(field.at({i, j}) - ref);
      den += std::norm(ref);
      ++count;
    }
  }
  return {hz, std::sqrt(num / den), count, seconds_since(t0)};
}

PmlReport pml_check(double hz, double eps_r, int nx, int ny, double cell, const PMLConfig& pml) {
  CellIndex src, src_big;
  const auto small = homogeneous_field(hz, eps_r, nx, ny, cell, pml, &src);
  const int pad = std::max(nx, ny) / 2;
  const auto big = homogeneous_field(hz, eps_r, nx + 2 * pad, ny + 2 * pad, cell, pml, &src_big);
  const int di = src_big.i - src.i, dj = src_big.j - src.j;
  const int t = pml.thickness;
  double num = 0.0, den = 0.0;
  for (int j = t; j < ny - t; ++j) {
    for (int i = t; i < nx - t; ++i) {
      const cplx ref = big.at({i + di, j + dj});
      num += std::norm(small.at({i, j}) - ref);
      den += std::norm(ref);
    }
  }
  double phys = 0.0, edge = 0.0;
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const double a = std::abs(small.at({i, j}));
      if (i == 0 || j == 0 || i == nx - 1 || j == ny - 1) edge = std::max(edge, a);
      if (i >= t && i < nx - t && j >= t && j < ny - t) phys = std::max(phys, a);
    }
  }
  return {hz, 10.0 * std::log10(den / num), 20.0 * std::log10(phys / edge)};
}

ReciprocityReport reciprocity_check(const TissueMap& phantom, const std::vector<CellIndex>& antennas,
                                    double hz, const PMLConfig& pml) {
  const double w = 2.0 * std::numbers::pi * hz;
  HelmholtzSolver solver(assemble(build_background(phantom, w), w, pml));
  std::vector<FieldSolution> f;
  for (const auto& a : antennas) f.push_back(solver.solve_source(a));
  ReciprocityReport rep{hz, 0.0, 0};
  for (std::size_t a = 0; a < antennas.size(); ++a) {
    for (std::size_t b = a + 1; b < antennas.size(); ++b) {
      const cplx gab = f[a].at(antennas[b]);
      const cplx gba = f[b].at(antennas[a]);
      rep.max_rel_diff = std::max(rep.max_rel_diff, std::abs(gab - gba) / std::abs(gab));
      ++rep.pairs;
    }
  }
  return rep;
}

BornReport born_consistency(const TissueMap& phantom, const std::vector<CellIndex>& antennas,
                            const std::vector<double>& hz, std::size_t cell,
                            const std::vector<double>& alpha, const PMLConfig& pml) {
  const CellMask support = phantom.breast_mask();
  if (!support[cell]) throw ConfigurationError("born_consistency: cell is not breast tissue");
  std::vector<ComplexPermittivityMap> bg;
  for (double f : hz) bg.push_back(build_background(phantom, 2.0 * std::numbers::pi * f));
  const FieldBank fb = simulate_fields(bg, antennas, pml);
  const SensingMatrix a = build_sensing_matrix(fb, bg, hz, support);
  const auto cells = support.indices();
  const auto col = static_cast<std::size_t>(
      std::lower_bound(cells.begin(), cells.end(), cell) - cells.begin());

  BornReport rep;
  for (double al : alpha) {
    std::vector<ComplexPermittivityMap> pert;
    for (const auto& m : bg) {
      const std::size_t one[1] = {cell};
      pert.push_back(m.with_cells(one, m[cell] * (1.0 + al)));
    }
    const FieldBank fp = simulate_fields(pert, antennas, pml);
    double num = 0.0, den = 0.0;
    for (std::size_t f = 0; f < hz.size(); ++f) {
      for (std::size_t k = 0; k < antennas.size(); ++k) {
        const cplx y = scattered_field(fp[f][k], fb[f][k]);
        const cplx born = a.a(f * antennas.size() + k, col) * al;
        num += std::norm(born - y);
        den += std::norm(y);
      }
    }
    rep.alpha.push_back(al);
    rep.rel_err.push_back(std::sqrt(num / den));
  }
  double mx = 0, my = 0;
  const double n = static_cast<double>(alpha.size());
  for (std::size_t k = 0; k < alpha.size(); ++k) {
    mx += std::log(rep.alpha[k]) / n;
    my += std::log(rep.rel_err[k]) / n;
  }
  double sxy = 0, sxx = 0;
  for (std::size_t k = 0; k < alpha.size(); ++k) {
    const double dx = std::log(rep.alpha[k]) - mx;
    sxy += dx * (std::log(rep.rel_err[k]) - my);
    sxx += dx * dx;
  }
  rep.slope = sxy / sxx;
  return rep;
}

cplx qp_project(cplx z, cplx b) {
  // Variables v = (Re x, Im x). Constraints a_k . v >= c_k.
  const double br = b.real(), bi = b.imag();
  const double a[2][2] = {{br, -bi}, {bi, br}};
  const double c[2] = {1.0 - br, -bi};
  const double v0[2] = {z.real(), z.imag()};
  const double scale = std::max(1.0, std::abs(b) * (1.0 + std::abs(z)));
  auto feasible = [&](const double* v) {
    for (int k = 0; k < 2; ++k) {
      if (a[k][0] * v[0] + a[k][1] * v[1] < c[k] - 1e-13 * scale) return false;
    }
    return true;
  };

  double best[2] = {0, 0};
  double best_d = INFINITY;
  auto consider = [&](double x, double y) {
    const double v[2] = {x, y};
    if (!feasible(v)) return;
    const double d = (x - v0[0]) * (x - v0[0]) + (y - v0[1]) * (y - v0[1]);
    if (d < best_d) {
      best_d = d;
      best[0] = x;
      best[1] = y;
    }
  };

  // No active constraint.
  consider(v0[0], v0[1]);
  // One active constraint: closest point on the line a_k . v = c_k, valid only
  // with a non-negative multiplier.
  for (int k = 0; k < 2; ++k) {
    const double nn = a[k][0] * a[k][0] + a[k][1] * a[k][1];
    const double s = (c[k] - (a[k][0] * v0[0] + a[k][1] * v0[1])) / nn;
    if (s >= 0) consider(v0[0] + s * a[k][0], v0[1] + s * a[k][1]);
  }
  // Both active: solve the 2x2 system.
  const double det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
  consider((c[0] * a[1][1] - a[0][1] * c[1]) / det, (a[0][0] * c[1] - c[0] * a[1][0]) / det);
  if (!std::isfinite(best_d)) throw DomainError("qp_project: no feasible candidate");
  return {best[0], best[1]};
}

ProjectionReport projection_check(std::size_t instances, std::uint64_t seed) {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> re(1.0, 60.0), im(0.0, 40.0), zz(-3.0, 3.0);
  ProjectionReport rep;
  std::vector<cplx> eb(instances), z(instances);
  for (std::size_t k = 0; k < instances; ++k) {
    eb[k] = {re(rng), im(rng)};
    z[k] = {zz(rng), zz(rng)};
  }
  const auto out = project(z, FeasibleRegion(eb));
  for (std::size_t k = 0; k < instances; ++k) {
    const cplx q = qp_project(z[k], eb[k]);
    rep.max_abs_diff = std::max(rep.max_abs_diff, std::abs(out[k] - q));
    rep.max_distance_gap =
        std::max(rep.max_distance_gap, std::abs(std::norm(out[k] - z[k]) - std::norm(q - z[k])));
  }
  rep.instances = instances;
  rep.seconds = seconds_since(t0);
  return rep;
}

double direct_objective(const std::vector<cplx>& x, const CMatrix& a, const std::vector<cplx>& y,
                        double lambda, double mu) {
  double fit = 0.0;
  for (std::size_t m = 0; m < a.rows(); ++m) {
    cplx s = 0.0;
    for (std::size_t n = 0; n < a.cols(); ++n) s += a(m, n) * x[n];
    fit += std::norm(s - y[m]);
  }
  double reg = 0.0;
  for (const auto& v : x) {
    const double r = std::abs(v);
    reg += r <= mu ? r * r / (2.0 * mu) : r - mu / 2.0;
  }
  return 0.5 * fit + lambda * reg;
}

std::vector<cplx> fd_gradient(const std::vector<cplx>& x, const CMatrix& a,
                              const std::vector<cplx>& y, double lambda, double mu, double h) {
  std::vector<cplx> g(x.size());
  std::vector<cplx> p = x;
  for (std::size_t n = 0; n < x.size(); ++n) {
    double d[2];
    for (int part = 0; part < 2; ++part) {
      const cplx step = part == 0 ? cplx(h, 0) : cplx(0, h);
      p[n] = x[n] + step;
      const double fp = direct_objective(p, a, y, lambda, mu);
      p[n] = x[n] - step;
      const double fm = direct_objective(p, a, y, lambda, mu);
      p[n] = x[n];
      d[part] = (fp - fm) / (2.0 * h);
    }
    g[n] = {d[0], d[1]};
  }
  return g;
}

GradientReport gradient_check(std::size_t points, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  const std::size_t m = 18, n = 40;
  CMatrix a(m, n);
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < n; ++c) a(r, c) = {normal(rng), normal(rng)};
  }
  std::vector<cplx> y(m);
  for (auto& v : y) v = {normal(rng), normal(rng)};
  const double lambda = 0.7, mu = 0.05;
  GradientReport rep;
  for (std::size_t p = 0; p < points; ++p) {
    std::vector<cplx> x(n);
    for (auto& v : x) v = {normal(rng), normal(rng)};
    // a few entries inside the quadratic zone of the smoothing
    for (std::size_t k = 0; k < 5; ++k) x[(p + 7 * k) % n] *= 0.01;
    const auto g = gradient(x, a, y, lambda, mu);
    const auto gf = fd_gradient(x, a, y, lambda, mu, 1e-6);
    double num = 0.0, den = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      num += std::norm(g[k] - gf[k]);
      den += std::norm(gf[k]);
    }
    rep.max_rel_err = std::max(rep.max_rel_err, std::sqrt(num / den));
    ++rep.points;
  }
  return rep;
}

}  // namespace nrics::oracle
