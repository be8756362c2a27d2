#pragma once

#include <filesystem>
#include <span>
#include <vector>

#include "nrics/core/dense.hpp"
#include "nrics/core/grid.hpp"
#include "nrics/fdfd/field.hpp"

namespace nrics {

/// Identifies one monostatic measurement.
struct RowKey {
  std::size_t antenna = 0;
  std::size_t frequency = 0;  // index into the FrequencySet
  double hz = 0.0;
  friend bool operator==(const RowKey&, const RowKey&) = default;
};

/// Background data for one (antenna, frequency) row: the antenna's field in
/// the healthy medium (which is also its Green's function by reciprocity) and
/// k_b^2 on the support.
struct BackgroundRow {
  RowKey key;
  const FieldSolution* field = nullptr;
  std::vector<cplx> green;
  std::vector<cplx> k_squared;
};

/// Born operator y = A x; rows ordered frequency-major (row = f * n_a + a).
struct SensingMatrix {
  CMatrix a;
  std::vector<RowKey> rows;
  CellMask support;
  Grid2D grid;

  std::size_t m() const noexcept { return a.rows(); }
  std::size_t n() const noexcept { return a.cols(); }
  std::vector<cplx> apply(std::span<const cplx> x) const;
  std::vector<cplx> adjoint(std::span<const cplx> r) const;
};

/// A[(a, w), n] = G_b(r_a, r_n) k_b^2(r_n) E_b(r_n) dx dy.
/// Throws ConfigurationError when any (antenna, frequency) pair is missing or
/// carries inconsistent data.
SensingMatrix build_sensing_matrix(std::span<const BackgroundRow> rows, const CellMask& support,
                                   std::size_t n_antennas, std::size_t n_frequencies);

/// Convenience: rows from background fields [frequency][antenna] and the
/// background media (one per frequency).
SensingMatrix build_sensing_matrix(const std::vector<std::vector<FieldSolution>>& background_fields,
                                   std::span<const ComplexPermittivityMap> background_media,
                                   std::span<const double> hz, const CellMask& support);

/// CSV `antenna,frequency_hz,cell,real,imag`, one line per matrix entry.
void write_sensing_csv(const SensingMatrix& s, const std::filesystem::path& path);

}  // namespace nrics
