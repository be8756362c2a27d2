#pragma once

#include <filesystem>
#include <span>
#include <vector>

#include "nrics/core/dense.hpp"

namespace nrics {

/// Smoothed modulus: |x|^2 / (2 mu) for |x| < mu, |x| - mu / 2 otherwise.
double huber(cplx x, double mu);

/// Gradient of huber over (Re x, Im x), packed as a complex number.
cplx huber_grad(cplx x, double mu);

/// Background permittivity on the support. A contrast x is feasible when
/// Re(eps_b x + eps_b) >= 1 and Im(eps_b x + eps_b) >= 0 element-wise.
class FeasibleRegion {
 public:
  /// Throws DomainError for a zero or non-finite entry.
  explicit FeasibleRegion(std::vector<cplx> eps_b);
  std::span<const cplx> eps_b() const noexcept { return eps_b_; }
  std::size_t size() const noexcept { return eps_b_.size(); }
  bool contains(std::span<const cplx> x, double tol = 1e-12) const;

 private:
  std::vector<cplx> eps_b_;
};

/// Euclidean projection onto the feasible set, computed by clamping
/// w = eps_b z + eps_b to Re >= 1, Im >= 0 and mapping back.
std::vector<cplx> project(std::span<const cplx> z, const FeasibleRegion& region);

/// 0.5 ||A x - y||^2 + lambda * sum huber(x_n, mu)
double objective(std::span<const cplx> x, const CMatrix& a, std::span<const cplx> y,
                 double lambda, double mu);

/// A^H (A x - y) + lambda * huber_grad(x_n, mu)
std::vector<cplx> gradient(std::span<const cplx> x, const CMatrix& a, std::span<const cplx> y,
                           double lambda, double mu);

/// Largest singular value by power iteration on A^H A. Throws
/// ConditioningError if the Rayleigh quotient has not settled to `tol`
/// (relative) within `max_iters`.
double operator_norm(const CMatrix& a, double tol = 1e-12, int max_iters = 20000);

struct SolverConfig {
  double lambda = 0.0;
  double mu = 0.0;
  /// Iteration cap for each continuation stage.
  int max_iters = 5000;
  /// Stage ends when |f_k - f_{k-window}| <= tol |f_k|.
  double tol = 1e-7;
  int window = 10;
  /// Extra stages after the first, each shrinking mu by `continuation_factor`.
  int continuation_steps = 4;
  double continuation_factor = 0.1;
  double lipschitz_safety = 1.01;
  /// Throws ConfigurationError on a non-positive or out-of-range field.
  void validate() const;
};

/// lambda = max(0.05 ||A^H y||_inf, kappa * sigma * sqrt(2 ln N) * max_n ||A e_n||).
/// The second term is the expected noise correlation level; it vanishes for
/// noiseless data, where sigma (per-entry complex noise std) is 0.
double default_lambda(const CMatrix& a, std::span<const cplx> y, double noise_sigma,
                      double kappa = 1.0);

/// 1e-3 ||x_ls||_inf for the minimum-norm least-squares solution x_ls.
double default_mu(const CMatrix& a, std::span<const cplx> y);

struct SolveReport {
  std::vector<cplx> x;
  /// Objective after every iteration, all stages concatenated.
  std::vector<double> trace;
  /// Index in `trace` where each stage starts.
  std::vector<std::size_t> stage_starts;
  std::vector<double> stage_mu;
  int iterations = 0;
  double residual = 0.0;
  double l1 = 0.0;
  double objective = 0.0;
  double norm_a = 0.0;
  bool converged = false;
};

/// Accelerated projected gradient from x0 = 0 with step 1 / L,
/// L = (||A||^2 + lambda / mu) * lipschitz_safety, restarted at every
/// continuation stage. Returns the lowest-objective iterate of the last stage.
/// Throws DivergenceError on a non-finite objective.
SolveReport nesterov_solve(const CMatrix& a, std::span<const cplx> y, const FeasibleRegion& region,
                           const SolverConfig& config);

/// CSV `iteration,stage,objective`.
void write_trace_csv(const SolveReport& report, const std::filesystem::path& path);

}  // namespace nrics
