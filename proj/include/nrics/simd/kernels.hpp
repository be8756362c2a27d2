#pragma once

#include <complex>
#include <cstddef>
#include <string_view>

namespace nrics::simd {

using cplx = std::complex<double>;

enum class Level { scalar, avx2 };

/// Inner loops of the inversion. Matrices are dense row-major M x N complex.
/// Every level computes the same quantities; only the summation order differs.
struct KernelTable {
  /// y[m] = sum_n a[m, n] x[n]
  void (*gemv)(const cplx* a, std::size_t m, std::size_t n, const cplx* x, cplx* y);
  /// g[n] = sum_m conj(a[m, n]) r[m]
  void (*gemv_adjoint)(const cplx* a, std::size_t m, std::size_t n, const cplx* r, cplx* g);
  /// sum_n huber(x[n], mu)
  double (*huber_sum)(const cplx* x, std::size_t n, double mu);
  /// g[n] += weight * x[n] / max(|x[n]|, mu)
  void (*huber_grad_accumulate)(const cplx* x, std::size_t n, double mu, double weight, cplx* g);
  /// out[n] = feasible projection of (z[n] - step g[n]) for background eps_b[n]
  void (*project_step)(const cplx* z, const cplx* g, double step, const cplx* eps_b,
                       std::size_t n, cplx* out);
  /// z[n] = x[n] + beta (x[n] - x_prev[n])
  void (*extrapolate)(const cplx* x, const cplx* x_prev, double beta, std::size_t n, cplx* z);
};

const KernelTable& scalar_kernels();
/// Null when the binary was built without AVX2 support.
const KernelTable* avx2_kernels();

/// Whether both the build and the running CPU support the level.
bool supported(Level level);

/// Best supported level, unless NRICS_SIMD=scalar|avx2 overrides it.
Level detect_level();

/// Kernels of the process-wide level, chosen on first use.
const KernelTable& active();
Level active_level();

/// Kernels for a specific level; throws ConfigurationError when unsupported.
const KernelTable& kernels(Level level);

std::string_view name(Level level);

}  // namespace nrics::simd
