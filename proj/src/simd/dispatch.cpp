#include <cstdlib>
#include <string>

#include "nrics/core/error.hpp"
#include "nrics/simd/kernels.hpp"

namespace nrics::simd {

#ifndef NRICS_HAVE_AVX2
const KernelTable* avx2_kernels() { return nullptr; }
#endif

namespace {

bool cpu_has_avx2() {
#if defined(NRICS_HAVE_AVX2) && (defined(__x86_64__) || defined(__i386__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

}  // namespace

bool supported(Level level) {
  switch (level) {
    case Level::scalar: return true;
    case Level::avx2: return avx2_kernels() != nullptr && cpu_has_avx2();
  }
  return false;
}

std::string_view name(Level level) { return level == Level::avx2 ? "avx2" : "scalar"; }

Level detect_level() {
  if (const char* env = std::getenv("NRICS_SIMD")) {
    const std::string v(env);
    if (v == "scalar") return Level::scalar;
    if (v == "avx2") {
      if (!supported(Level::avx2)) throw ConfigurationError("NRICS_SIMD=avx2 but AVX2 is unavailable");
      return Level::avx2;
    }
    throw ConfigurationError("NRICS_SIMD must be 'scalar' or 'avx2', got '" + v + "'");
  }
  return supported(Level::avx2) ? Level::avx2 : Level::scalar;
}

Level active_level() {
  static const Level level = detect_level();
  return level;
}

const KernelTable& kernels(Level level) {
  if (!supported(level)) {
    throw ConfigurationError("SIMD level " + std::string(name(level)) + " is not supported here");
  }
  return level == Level::avx2 ? *avx2_kernels() : scalar_kernels();
}

const KernelTable& active() { return kernels(active_level()); }

}  // namespace nrics::simd
