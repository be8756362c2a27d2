#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include "nrics/core/antenna.hpp"
#include "nrics/core/frequency.hpp"
#include "nrics/fdfd/field.hpp"
#include "nrics/sensing/sensing_matrix.hpp"

namespace nrics {

/// Fields [frequency][antenna].
using FieldBank = std::vector<std::vector<FieldSolution>>;

/// Factorises each medium once and solves one unit source per antenna.
/// `media` holds one map per frequency, evaluated at that frequency.
FieldBank simulate_fields(std::span<const ComplexPermittivityMap> media,
                          std::span<const CellIndex> antenna_cells, const PMLConfig& pml);

struct MeasurementSet {
  std::vector<cplx> y;
  std::vector<RowKey> rows;
  std::optional<double> snr_db;
  std::optional<std::uint64_t> seed;
  /// Standard deviation of each complex noise entry; 0 when noiseless.
  double noise_sigma = 0.0;
};

/// Row keys for n_frequencies x n_antennas, frequency-major.
std::vector<RowKey> measurement_rows(const FrequencySet& freqs, std::size_t n_antennas);

/// y[(a, w)] = E_cancer(r_a) - E_background(r_a).
MeasurementSet synthesize_measurements(const FieldBank& cancer, const FieldBank& background,
                                       const FrequencySet& freqs);

/// Same, running the forward solves for one medium per frequency.
MeasurementSet synthesize_measurements(std::span<const ComplexPermittivityMap> cancer_media,
                                       std::span<const ComplexPermittivityMap> background_media,
                                       const AntennaArray& antennas, const FrequencySet& freqs,
                                       const PMLConfig& pml = {});

/// Field scattered by the whole breast: E_healthy(r_a) - E_bolus_only(r_a).
/// Serves as the signal in the SNR definition.
std::vector<cplx> breast_scatter_reference(const FieldBank& healthy, const FieldBank& bolus_only);

/// Adds circular complex Gaussian noise with total power
/// ||reference||^2 / 10^(snr_db/10), spread evenly over the entries.
/// snr_db = +inf returns the input unchanged.
MeasurementSet add_noise(const MeasurementSet& m, std::span<const cplx> reference, double snr_db,
                         std::uint64_t seed);

/// ||y - A x|| / ||y||, the share of y the Born model does not explain.
double model_error_fraction(const SensingMatrix& a, std::span<const cplx> y,
                            std::span<const cplx> x);

/// CSV `antenna,frequency_hz,real,imag`.
void write_measurements_csv(const MeasurementSet& m, const std::filesystem::path& path);
MeasurementSet read_measurements_csv(const std::filesystem::path& path,
                                     const FrequencySet& freqs);

double l2_norm(std::span<const cplx> v);

}  // namespace nrics
