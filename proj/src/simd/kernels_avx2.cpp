// Built with -mavx2 -mfma; only reached after a runtime CPU check.
#include <immintrin.h>

#include <algorithm>
#include <cmath>

#include "nrics/simd/kernels.hpp"

namespace nrics::simd {

namespace {

// Two interleaved complex values per register: [re0, im0, re1, im1].
inline __m256d load2(const cplx* p) { return _mm256_loadu_pd(reinterpret_cast<const double*>(p)); }
inline void store2(cplx* p, __m256d v) { _mm256_storeu_pd(reinterpret_cast<double*>(p), v); }
inline __m256d swap_re_im(__m256d v) { return _mm256_permute_pd(v, 0b0101); }

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

// |v| per complex, broadcast into both of its lanes.
inline __m256d modulus2(__m256d v) {
  const __m256d sq = _mm256_mul_pd(v, v);
  return _mm256_sqrt_pd(_mm256_add_pd(sq, swap_re_im(sq)));
}

void gemv(const cplx* a, std::size_t m, std::size_t n, const cplx* x, cplx* y) {
  for (std::size_t r = 0; r < m; ++r) {
    const cplx* row = a + r * n;
    // acc_direct lanes: ar*xr, ai*xi ; acc_cross lanes: ar*xi, ai*xr
    __m256d acc_direct = _mm256_setzero_pd();
    __m256d acc_cross = _mm256_setzero_pd();
    std::size_t c = 0;
    for (; c + 2 <= n; c += 2) {
      const __m256d av = load2(row + c);
      const __m256d xv = load2(x + c);
      acc_direct = _mm256_fmadd_pd(av, xv, acc_direct);
      acc_cross = _mm256_fmadd_pd(av, swap_re_im(xv), acc_cross);
    }
    alignas(32) double d[4], k[4];
    _mm256_store_pd(d, acc_direct);
    _mm256_store_pd(k, acc_cross);
    double re = (d[0] + d[2]) - (d[1] + d[3]);
    double im = (k[0] + k[2]) + (k[1] + k[3]);
    for (; c < n; ++c) {
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
    // conj(a) r = [ar rr + ai ri, ar ri - ai rr]
    const __m256d rr_signed = _mm256_setr_pd(rr, -rr, rr, -rr);
    const __m256d ri_b = _mm256_set1_pd(ri);
    std::size_t c = 0;
    for (; c + 2 <= n; c += 2) {
      const __m256d av = load2(row + c);
      __m256d gv = load2(g + c);
      gv = _mm256_add_pd(gv, _mm256_fmadd_pd(av, rr_signed, _mm256_mul_pd(swap_re_im(av), ri_b)));
      store2(g + c, gv);
    }
    for (; c < n; ++c) {
      const double ar = row[c].real(), ai = row[c].imag();
      g[c] += cplx{ar * rr + ai * ri, ar * ri - ai * rr};
    }
  }
}

double huber_sum(const cplx* x, std::size_t n, double mu) {
  const __m256d muv = _mm256_set1_pd(mu);
  const __m256d half_mu = _mm256_set1_pd(0.5 * mu);
  const __m256d inv_2mu = _mm256_set1_pd(1.0 / (2.0 * mu));
  __m256d acc = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    const __m256d a = modulus2(load2(x + k));
    const __m256d quad = _mm256_mul_pd(_mm256_mul_pd(a, a), inv_2mu);
    const __m256d lin = _mm256_sub_pd(a, half_mu);
    const __m256d inner = _mm256_cmp_pd(a, muv, _CMP_LT_OQ);
    acc = _mm256_add_pd(acc, _mm256_blendv_pd(lin, quad, inner));
  }
  // each modulus was broadcast to two lanes
  double s = 0.5 * hsum(acc);
  for (; k < n; ++k) {
    const double a = std::sqrt(x[k].real() * x[k].real() + x[k].imag() * x[k].imag());
    s += a < mu ? a * a / (2.0 * mu) : a - 0.5 * mu;
  }
  return s;
}

void huber_grad_accumulate(const cplx* x, std::size_t n, double mu, double weight, cplx* g) {
  const __m256d muv = _mm256_set1_pd(mu);
  const __m256d wv = _mm256_set1_pd(weight);
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    const __m256d xv = load2(x + k);
    const __m256d scale = _mm256_div_pd(wv, _mm256_max_pd(modulus2(xv), muv));
    store2(g + k, _mm256_fmadd_pd(xv, scale, load2(g + k)));
  }
  for (; k < n; ++k) {
    const double a = std::sqrt(x[k].real() * x[k].real() + x[k].imag() * x[k].imag());
    g[k] += x[k] * (weight / std::max(a, mu));
  }
}

void project_step(const cplx* z, const cplx* g, double step, const cplx* eps_b, std::size_t n,
                  cplx* out) {
  const __m256d stepv = _mm256_set1_pd(step);
  const __m256d lower = _mm256_setr_pd(1.0, 0.0, 1.0, 0.0);
  const __m256d sign = _mm256_setr_pd(-1.0, 1.0, -1.0, 1.0);
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    const __m256d zv = _mm256_fnmadd_pd(stepv, load2(g + k), load2(z + k));
    const __m256d b = load2(eps_b + k);
    const __m256d b_re = _mm256_movedup_pd(b);          // [br, br]
    const __m256d b_im = _mm256_permute_pd(b, 0b1111);  // [bi, bi]
    // eps_b * z = [br zr - bi zi, br zi + bi zr]
    const __m256d prod = _mm256_fmadd_pd(b_re, zv, _mm256_mul_pd(_mm256_mul_pd(b_im, swap_re_im(zv)), sign));
    const __m256d w0 = _mm256_add_pd(prod, b);
    // feasible elements pass through untouched
    const __m256d ok = _mm256_cmp_pd(w0, lower, _CMP_GE_OQ);
    const __m256d keep = _mm256_and_pd(ok, swap_re_im(ok));
    const __m256d w = _mm256_max_pd(w0, lower);
    const __m256d d = _mm256_sub_pd(w, b);
    // d * conj(b) / |b|^2 = [dr br + di bi, di br - dr bi] / |b|^2
    const __m256d bb = _mm256_mul_pd(b, b);
    const __m256d norm = _mm256_add_pd(bb, swap_re_im(bb));
    const __m256d inv = _mm256_div_pd(_mm256_set1_pd(1.0), norm);
    const __m256d num = _mm256_fmsub_pd(b_re, d, _mm256_mul_pd(_mm256_mul_pd(b_im, swap_re_im(d)), sign));
    store2(out + k, _mm256_blendv_pd(_mm256_mul_pd(num, inv), zv, keep));
  }
  if (k < n) scalar_kernels().project_step(z + k, g + k, step, eps_b + k, n - k, out + k);
}

void extrapolate(const cplx* x, const cplx* x_prev, double beta, std::size_t n, cplx* z) {
  const __m256d bv = _mm256_set1_pd(beta);
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    const __m256d xv = load2(x + k);
    store2(z + k, _mm256_fmadd_pd(bv, _mm256_sub_pd(xv, load2(x_prev + k)), xv));
  }
  for (; k < n; ++k) z[k] = x[k] + beta * (x[k] - x_prev[k]);
}

constexpr KernelTable kAvx2{gemv, gemv_adjoint, huber_sum, huber_grad_accumulate, project_step,
                            extrapolate};

}  // namespace

const KernelTable* avx2_kernels() { return &kAvx2; }

}  // namespace nrics::simd
