#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <random>
#include <vector>

#include "doctest.h"
#include "nrics/core/error.hpp"
#include "nrics/inversion/solver.hpp"
#include "nrics/simd/kernels.hpp"

using namespace nrics;
using simd::Level;

namespace {

std::vector<cplx> rand_vec(std::size_t n, std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> g(0.0, scale);
  std::vector<cplx> v(n);
  for (auto& x : v) x = {g(rng), g(rng)};
  return v;
}

double rel_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double num = 0.0, den = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    num += std::norm(a[k] - b[k]);
    den += std::norm(b[k]);
  }
  return den > 0 ? std::sqrt(num / den) : std::sqrt(num);
}

const std::vector<std::size_t> kSizes{1, 2, 3, 7, 8, 17, 64, 101};

}  // namespace

TEST_CASE("scalar kernels are always available") {
  CHECK(simd::supported(Level::scalar));
  CHECK(simd::name(Level::scalar) == "scalar");
  CHECK(simd::name(Level::avx2) == "avx2");
  CHECK_NOTHROW(simd::kernels(Level::scalar));
  if (!simd::supported(Level::avx2)) CHECK_THROWS_AS(simd::kernels(Level::avx2), ConfigurationError);
}

TEST_CASE("NRICS_SIMD override") {
  const char* old = std::getenv("NRICS_SIMD");
  const std::string saved = old ? old : "";
  setenv("NRICS_SIMD", "scalar", 1);
  CHECK(simd::detect_level() == Level::scalar);
  setenv("NRICS_SIMD", "sse9", 1);
  CHECK_THROWS_AS(simd::detect_level(), ConfigurationError);
  if (simd::supported(Level::avx2)) {
    setenv("NRICS_SIMD", "avx2", 1);
    CHECK(simd::detect_level() == Level::avx2);
  }
  unsetenv("NRICS_SIMD");
  CHECK(simd::detect_level() == (simd::supported(Level::avx2) ? Level::avx2 : Level::scalar));
  if (old) setenv("NRICS_SIMD", saved.c_str(), 1);
}

TEST_CASE("avx2 kernels match scalar kernels") {
  if (!simd::supported(Level::avx2)) {
    MESSAGE("AVX2 unavailable; equivalence not exercised");
    return;
  }
  const auto& s = simd::kernels(Level::scalar);
  const auto& v = simd::kernels(Level::avx2);
  std::mt19937_64 rng(77);

  for (std::size_t n : kSizes) {
    CAPTURE(n);
    for (std::size_t m : {std::size_t{1}, std::size_t{5}, std::size_t{18}}) {
      const auto a = rand_vec(m * n, rng);
      const auto x = rand_vec(n, rng);
      const auto r = rand_vec(m, rng);
      std::vector<cplx> ys(m), yv(m), gs(n), gv(n);
      s.gemv(a.data(), m, n, x.data(), ys.data());
      v.gemv(a.data(), m, n, x.data(), yv.data());
      CHECK(rel_diff(yv, ys) <= 1e-13);
      s.gemv_adjoint(a.data(), m, n, r.data(), gs.data());
      v.gemv_adjoint(a.data(), m, n, r.data(), gv.data());
      CHECK(rel_diff(gv, gs) <= 1e-13);
    }

    // values on both sides of mu
    const auto x = rand_vec(n, rng, 0.2);
    for (double mu : {1e-3, 0.15, 10.0}) {
      const double hs = s.huber_sum(x.data(), n, mu);
      const double hv = v.huber_sum(x.data(), n, mu);
      CHECK(std::abs(hv - hs) <= 1e-13 * std::max(1.0, std::abs(hs)));
      auto gs = rand_vec(n, rng);
      auto gv = gs;
      s.huber_grad_accumulate(x.data(), n, mu, 0.7, gs.data());
      v.huber_grad_accumulate(x.data(), n, mu, 0.7, gv.data());
      CHECK(rel_diff(gv, gs) <= 1e-14);
    }

    std::uniform_real_distribution<double> re(1.0, 60.0), im(0.0, 40.0);
    std::vector<cplx> eb(n);
    for (auto& e : eb) e = {re(rng), im(rng)};
    const auto z = rand_vec(n, rng, 2.0);
    const auto g = rand_vec(n, rng);
    std::vector<cplx> ps(n), pv(n);
    s.project_step(z.data(), g.data(), 0.3, eb.data(), n, ps.data());
    v.project_step(z.data(), g.data(), 0.3, eb.data(), n, pv.data());
    for (std::size_t k = 0; k < n; ++k) CHECK(std::abs(pv[k] - ps[k]) <= 1e-14 * (1 + std::abs(ps[k])));

    const auto xp = rand_vec(n, rng);
    std::vector<cplx> es(n), ev(n);
    s.extrapolate(x.data(), xp.data(), 0.83, n, es.data());
    v.extrapolate(x.data(), xp.data(), 0.83, n, ev.data());
    CHECK(rel_diff(ev, es) <= 1e-15);
  }
}

TEST_CASE("kernels agree with plain definitions") {
  std::mt19937_64 rng(9);
  const std::size_t m = 4, n = 7;
  const auto a = rand_vec(m * n, rng);
  const auto x = rand_vec(n, rng);
  std::vector<cplx> ref(m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k < n; ++k) ref[i] += a[i * n + k] * x[k];
  for (Level l : {Level::scalar, Level::avx2}) {
    if (!simd::supported(l)) continue;
    const auto& k = simd::kernels(l);
    std::vector<cplx> y(m);
    k.gemv(a.data(), m, n, x.data(), y.data());
    CHECK(rel_diff(y, ref) <= 1e-14);
    double h = 0.0;
    for (auto v : x) h += huber(v, 0.5);
    CHECK(k.huber_sum(x.data(), n, 0.5) == doctest::Approx(h).epsilon(1e-14));
    // projection with a zero step is the feasible-set projection
    const std::vector<cplx> eb(n, cplx(10.0, 2.0)), zero(n);
    std::vector<cplx> out(n);
    k.project_step(x.data(), zero.data(), 0.0, eb.data(), n, out.data());
    const auto p = project(x, FeasibleRegion(eb));
    CHECK(rel_diff(out, p) <= 1e-15);
  }
}

TEST_CASE("solver output is level independent") {
  if (!simd::supported(Level::avx2)) return;
  std::mt19937_64 rng(31);
  const std::size_t m = 18, n = 150;
  CMatrix a(m, n);
  const auto av = rand_vec(m * n, rng);
  std::copy(av.begin(), av.end(), a.data());
  std::vector<cplx> xt(n);
  xt[12] = {0.4, 0.1};
  std::vector<cplx> y(m);
  const auto& s = simd::kernels(Level::scalar);
  s.gemv(a.data(), m, n, xt.data(), y.data());
  std::vector<cplx> gs(n), gv(n);
  s.gemv_adjoint(a.data(), m, n, y.data(), gs.data());
  simd::kernels(Level::avx2).gemv_adjoint(a.data(), m, n, y.data(), gv.data());
  // the same correlation peak is picked by either level
  auto peak = [](const std::vector<cplx>& g) {
    return std::max_element(g.begin(), g.end(), [](cplx p, cplx q) { return std::abs(p) < std::abs(q); }) -
           g.begin();
  };
  CHECK(peak(gs) == peak(gv));
}
