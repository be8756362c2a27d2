#include <algorithm>
#include <cmath>

#include "nrics/simd/kernels.hpp"

namespace nrics::simd {

namespace {

void gemv(const cplx* a, std::size_t m, std::size_t n, const cplx* x, cplx* y) {
  for (std::size_t r = 0; r < m; ++r) {
    const cplx* row = a + r * n;
    double re = 0.0, im = 0.0;
    for (std::size_t c = 0; c < n; ++c) {
      re += row[c].real() * x[c].real() - row[c].imag() * x[c].imag();
      im += row[c].real() * x[c].imag() + row[c].imag() * x[c].real();
    }
    y[r] = {re, im};
  }
}

void gemv_adjoint(const cplx* a, std::size_t m, std::size_t n, const cplx* r, cplx* g) {
  std::fill(g, g + n, cplx{});
  for (std::size_t k = 0; k < m; ++k) {
    const cplx* row = a + k * n;
    const double rr = r[k].real(), ri = r[k].imag();
    for (std::size_t c = 0; c < n; ++c) {
      const double ar = row[c].real(), ai = row[c].imag();
      g[c] += cplx{ar * rr + ai * ri, ar * ri - ai * rr};
    }
  }
}

double huber_sum(const cplx* x, std::size_t n, double mu) {
  double s = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double a = std::sqrt(x[k].real() * x[k].real() + x[k].imag() * x[k].imag());
    s += a < mu ? a * a / (2.0 * mu) : a - 0.5 * mu;
  }
  return s;
}

void huber_grad_accumulate(const cplx* x, std::size_t n, double mu, double weight, cplx* g) {
  for (std::size_t k = 0; k < n; ++k) {
    const double a = std::sqrt(x[k].real() * x[k].real() + x[k].imag() * x[k].imag());
    g[k] += x[k] * (weight / std::max(a, mu));
  }
}

void project_step(const cplx* z, const cplx* g, double step, const cplx* eps_b, std::size_t n,
                  cplx* out) {
  for (std::size_t k = 0; k < n; ++k) {
    const double zr = z[k].real() - step * g[k].real();
    const double zi = z[k].imag() - step * g[k].imag();
    const double br = eps_b[k].real(), bi = eps_b[k].imag();
    // w = eps_b * z + eps_b, clamped to Re >= 1, Im >= 0
    const double wr0 = br * zr - bi * zi + br;
    const double wi0 = br * zi + bi * zr + bi;
    if (wr0 >= 1.0 && wi0 >= 0.0) {
      out[k] = {zr, zi};
      continue;
    }
    const double wr = std::max(wr0, 1.0);
    const double wi = std::max(wi0, 0.0);
    // (w - eps_b) / eps_b
    const double dr = wr - br, di = wi - bi;
    const double inv = 1.0 / (br * br + bi * bi);
    out[k] = {(dr * br + di * bi) * inv, (di * br - dr * bi) * inv};
  }
}

void extrapolate(const cplx* x, const cplx* x_prev, double beta, std::size_t n, cplx* z) {
  for (std::size_t k = 0; k < n; ++k) z[k] = x[k] + beta * (x[k] - x_prev[k]);
}

constexpr KernelTable kScalar{gemv, gemv_adjoint, huber_sum, huber_grad_accumulate, project_step,
                              extrapolate};

}  // namespace

const KernelTable& scalar_kernels() { return kScalar; }

}  // namespace nrics::simd
