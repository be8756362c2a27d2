#include "nrics/inversion/solver.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <random>
#include <string>

#include <Eigen/Dense>

#include "nrics/core/error.hpp"
#include "nrics/simd/kernels.hpp"

namespace nrics {

double huber(cplx x, double mu) {
  const double r = std::abs(x);
  return r < mu ? r * r / (2.0 * mu) : r - 0.5 * mu;
}

cplx huber_grad(cplx x, double mu) { return x / std::max(std::abs(x), mu); }

FeasibleRegion::FeasibleRegion(std::vector<cplx> eps_b) : eps_b_(std::move(eps_b)) {
  for (std::size_t n = 0; n < eps_b_.size(); ++n) {
    const cplx b = eps_b_[n];
    if (!std::isfinite(b.real()) || !std::isfinite(b.imag()) || std::abs(b) == 0.0) {
      throw DomainError("feasible region: degenerate background at unknown " +
                        std::to_string(n));
    }
  }
}

bool FeasibleRegion::contains(std::span<const cplx> x, double tol) const {
  if (x.size() != eps_b_.size()) return false;
  for (std::size_t n = 0; n < x.size(); ++n) {
    const cplx w = eps_b_[n] * x[n] + eps_b_[n];
    if (w.real() < 1.0 - tol || w.imag() < -tol) return false;
  }
  return true;
}

std::vector<cplx> project(std::span<const cplx> z, const FeasibleRegion& region) {
  if (z.size() != region.size()) throw ConfigurationError("project: length mismatch");
  std::vector<cplx> out(z.size());
  const std::vector<cplx> zero(z.size());
  simd::active().project_step(z.data(), zero.data(), 0.0, region.eps_b().data(), z.size(),
                              out.data());
  return out;
}

namespace {

void check_shapes(std::size_t nx, const CMatrix& a, std::size_t ny) {
  if (nx != a.cols() || ny != a.rows()) {
    throw ConfigurationError("shape mismatch: A is " + std::to_string(a.rows()) + "x" +
                             std::to_string(a.cols()) + ", x has " + std::to_string(nx) +
                             ", y has " + std::to_string(ny));
  }
}

double half_sq_residual(std::span<const cplx> ax, std::span<const cplx> y) {
  double s = 0.0;
  for (std::size_t k = 0; k < y.size(); ++k) s += std::norm(ax[k] - y[k]);
  return 0.5 * s;
}

}  // namespace

double objective(std::span<const cplx> x, const CMatrix& a, std::span<const cplx> y,
                 double lambda, double mu) {
  check_shapes(x.size(), a, y.size());
  const auto& k = simd::active();
  std::vector<cplx> ax(a.rows());
  k.gemv(a.data(), a.rows(), a.cols(), x.data(), ax.data());
  return half_sq_residual(ax, y) + lambda * k.huber_sum(x.data(), x.size(), mu);
}

std::vector<cplx> gradient(std::span<const cplx> x, const CMatrix& a, std::span<const cplx> y,
                           double lambda, double mu) {
  check_shapes(x.size(), a, y.size());
  const auto& k = simd::active();
  std::vector<cplx> r(a.rows());
  k.gemv(a.data(), a.rows(), a.cols(), x.data(), r.data());
  for (std::size_t m = 0; m < r.size(); ++m) r[m] -= y[m];
  std::vector<cplx> g(a.cols());
  k.gemv_adjoint(a.data(), a.rows(), a.cols(), r.data(), g.data());
  if (lambda != 0.0) k.huber_grad_accumulate(x.data(), x.size(), mu, lambda, g.data());
  return g;
}

double operator_norm(const CMatrix& a, double tol, int max_iters) {
  if (a.rows() == 0 || a.cols() == 0) return 0.0;
  const auto& k = simd::active();
  std::mt19937_64 rng(0x5eed);
  std::normal_distribution<double> normal;
  std::vector<cplx> v(a.cols()), av(a.rows());
  for (auto& c : v) c = {normal(rng), normal(rng)};
  double prev = -1.0;
  for (int it = 0; it < max_iters; ++it) {
    double nv = 0.0;
    for (const auto& c : v) nv += std::norm(c);
    nv = std::sqrt(nv);
    if (nv == 0.0) return 0.0;
    for (auto& c : v) c /= nv;
    k.gemv(a.data(), a.rows(), a.cols(), v.data(), av.data());
    double rq = 0.0;
    for (const auto& c : av) rq += std::norm(c);
    if (prev >= 0.0 && std::abs(rq - prev) <= tol * rq) return std::sqrt(rq);
    prev = rq;
    k.gemv_adjoint(a.data(), a.rows(), a.cols(), av.data(), v.data());
  }
  throw ConditioningError("power iteration did not converge in " + std::to_string(max_iters) +
                          " iterations");
}

void SolverConfig::validate() const {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw ConfigurationError("solver: lambda must be > 0");
  if (!(mu > 0.0) || !std::isfinite(mu)) throw ConfigurationError("solver: mu must be > 0");
  if (max_iters <= 0) throw ConfigurationError("solver: max_iters must be > 0");
  if (!(tol > 0.0 && tol < 1.0)) throw ConfigurationError("solver: tol must lie in (0, 1)");
  if (window <= 0) throw ConfigurationError("solver: window must be > 0");
  if (continuation_steps < 0) throw ConfigurationError("solver: continuation_steps must be >= 0");
  if (!(continuation_factor > 0.0 && continuation_factor <= 1.0)) {
    throw ConfigurationError("solver: continuation_factor must lie in (0, 1]");
  }
  if (!(lipschitz_safety >= 1.0)) throw ConfigurationError("solver: lipschitz_safety must be >= 1");
}

double default_lambda(const CMatrix& a, std::span<const cplx> y, double noise_sigma,
                      double kappa) {
  check_shapes(a.cols(), a, y.size());
  std::vector<cplx> g(a.cols());
  simd::active().gemv_adjoint(a.data(), a.rows(), a.cols(), y.data(), g.data());
  double corr = 0.0;
  for (const auto& c : g) corr = std::max(corr, std::abs(c));
  double lam = 0.05 * corr;
  if (noise_sigma > 0.0 && a.cols() > 1) {
    std::vector<double> col(a.cols(), 0.0);
    for (std::size_t m = 0; m < a.rows(); ++m) {
      const auto row = a.row(m);
      for (std::size_t n = 0; n < a.cols(); ++n) col[n] += std::norm(row[n]);
    }
    const double cmax = std::sqrt(*std::max_element(col.begin(), col.end()));
    lam = std::max(lam, kappa * noise_sigma *
                            std::sqrt(2.0 * std::log(static_cast<double>(a.cols()))) * cmax);
  }
  return lam;
}

double default_mu(const CMatrix& a, std::span<const cplx> y) {
  check_shapes(a.cols(), a, y.size());
  using Mat = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  Eigen::Map<const Mat> am(a.data(), static_cast<Eigen::Index>(a.rows()),
                           static_cast<Eigen::Index>(a.cols()));
  Eigen::Map<const Eigen::VectorXcd> ym(y.data(), static_cast<Eigen::Index>(y.size()));
  const Eigen::VectorXcd x = am.completeOrthogonalDecomposition().solve(ym);
  const double peak = x.size() ? x.cwiseAbs().maxCoeff() : 0.0;
  return peak > 0.0 ? 1e-3 * peak : 1e-3;
}

SolveReport nesterov_solve(const CMatrix& a, std::span<const cplx> y, const FeasibleRegion& region,
                           const SolverConfig& config) {
  config.validate();
  check_shapes(region.size(), a, y.size());
  const auto& k = simd::active();
  const std::size_t m = a.rows(), n = a.cols();
  const cplx* eb = region.eps_b().data();

  SolveReport rep;
  rep.norm_a = operator_norm(a);

  std::vector<cplx> x(n), x_new(n), z(n), g(n), best(n);
  std::vector<cplx> ax(m), ax_new(m), az(m), r(m);
  const std::vector<cplx> zero(n);
  k.project_step(zero.data(), zero.data(), 0.0, eb, n, x.data());
  k.gemv(a.data(), m, n, x.data(), ax.data());

  double mu = config.mu;
  const double lambda = config.lambda;
  auto f_of = [&](const std::vector<cplx>& v, const std::vector<cplx>& av) {
    return half_sq_residual(av, y) + lambda * k.huber_sum(v.data(), n, mu);
  };

  double best_f = 0.0;
  for (int stage = 0; stage <= config.continuation_steps; ++stage) {
    const double lip = (rep.norm_a * rep.norm_a + lambda / mu) * config.lipschitz_safety;
    const double step = 1.0 / lip;
    rep.stage_starts.push_back(rep.trace.size());
    rep.stage_mu.push_back(mu);
    z = x;
    az = ax;
    best = x;
    best_f = f_of(x, ax);
    double t = 1.0;
    const std::size_t first = rep.trace.size();
    rep.converged = false;
    for (int it = 0; it < config.max_iters; ++it) {
      for (std::size_t i = 0; i < m; ++i) r[i] = az[i] - y[i];
      k.gemv_adjoint(a.data(), m, n, r.data(), g.data());
      k.huber_grad_accumulate(z.data(), n, mu, lambda, g.data());
      k.project_step(z.data(), g.data(), step, eb, n, x_new.data());
      k.gemv(a.data(), m, n, x_new.data(), ax_new.data());
      const double f = f_of(x_new, ax_new);
      rep.trace.push_back(f);
      ++rep.iterations;
      if (!std::isfinite(f)) {
        throw DivergenceError("objective became non-finite at iteration " +
                                  std::to_string(rep.iterations),
                              rep.trace);
      }
      const double t_new = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
      const double beta = (t - 1.0) / t_new;
      k.extrapolate(x_new.data(), x.data(), beta, n, z.data());
      k.extrapolate(ax_new.data(), ax.data(), beta, m, az.data());
      std::swap(x, x_new);
      std::swap(ax, ax_new);
      t = t_new;
      if (f < best_f) {
        best_f = f;
        best = x;
      }
      const std::size_t done = rep.trace.size() - first;
      if (done > static_cast<std::size_t>(config.window)) {
        const double old = rep.trace[rep.trace.size() - 1 - config.window];
        if (std::abs(old - f) <= config.tol * std::abs(f)) {
          rep.converged = true;
          break;
        }
      }
    }
    x = best;
    k.gemv(a.data(), m, n, x.data(), ax.data());
    if (stage < config.continuation_steps) mu *= config.continuation_factor;
  }

  rep.x = x;
  rep.objective = best_f;
  for (std::size_t i = 0; i < m; ++i) r[i] = ax[i] - y[i];
  double res = 0.0;
  for (const auto& c : r) res += std::norm(c);
  rep.residual = std::sqrt(res);
  for (const auto& c : x) rep.l1 += std::abs(c);
  return rep;
}

void write_trace_csv(const SolveReport& report, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << "iteration,stage,objective\n" << std::setprecision(17);
  std::size_t stage = 0;
  for (std::size_t i = 0; i < report.trace.size(); ++i) {
    while (stage + 1 < report.stage_starts.size() && report.stage_starts[stage + 1] <= i) ++stage;
    out << i << ',' << stage << ',' << report.trace[i] << '\n';
  }
}

}  // namespace nrics
