#include "nrics/sensing/measurements.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>
#include <string>

#include "nrics/core/error.hpp"

namespace nrics {

double l2_norm(std::span<const cplx> v) {
  double s = 0.0;
  for (const cplx& c : v) s += std::norm(c);
  return std::sqrt(s);
}

FieldBank simulate_fields(std::span<const ComplexPermittivityMap> media,
                          std::span<const CellIndex> antenna_cells, const PMLConfig& pml) {
  FieldBank bank;
  bank.reserve(media.size());
  for (const auto& medium : media) {
    HelmholtzSolver solver(assemble(medium, medium.omega(), pml));
    auto& fields = bank.emplace_back();
    for (const auto& c : antenna_cells) fields.push_back(solver.solve_source(c));
  }
  return bank;
}

std::vector<RowKey> measurement_rows(const FrequencySet& freqs, std::size_t n_antennas) {
  std::vector<RowKey> rows;
  for (std::size_t f = 0; f < freqs.size(); ++f) {
    for (std::size_t a = 0; a < n_antennas; ++a) rows.push_back({a, f, freqs.hz(f)});
  }
  return rows;
}

namespace {

void check_banks(const FieldBank& p, const FieldBank& q, std::size_t nf) {
  if (p.size() != nf || q.size() != nf) {
    throw ConfigurationError("measurements: one field set per frequency required");
  }
  for (std::size_t f = 0; f < nf; ++f) {
    if (p[f].size() != q[f].size() || p[f].empty()) {
      throw ConfigurationError("measurements: antenna counts differ");
    }
  }
}

std::vector<cplx> monostatic_difference(const FieldBank& p, const FieldBank& q) {
  std::vector<cplx> d;
  for (std::size_t f = 0; f < p.size(); ++f) {
    for (std::size_t a = 0; a < p[f].size(); ++a) d.push_back(scattered_field(p[f][a], q[f][a]));
  }
  return d;
}

}  // namespace

MeasurementSet synthesize_measurements(const FieldBank& cancer, const FieldBank& background,
                                       const FrequencySet& freqs) {
  check_banks(cancer, background, freqs.size());
  MeasurementSet m;
  m.y = monostatic_difference(cancer, background);
  m.rows = measurement_rows(freqs, cancer.front().size());
  return m;
}

MeasurementSet synthesize_measurements(std::span<const ComplexPermittivityMap> cancer_media,
                                       std::span<const ComplexPermittivityMap> background_media,
                                       const AntennaArray& antennas, const FrequencySet& freqs,
                                       const PMLConfig& pml) {
  if (cancer_media.size() != freqs.size() || background_media.size() != freqs.size()) {
    throw ConfigurationError("measurements: one medium per frequency required");
  }
  for (std::size_t f = 0; f < freqs.size(); ++f) {
    if (!(cancer_media[f].grid() == background_media[f].grid())) {
      throw ConfigurationError("measurements: media on different grids");
    }
  }
  const auto cells = antennas.cells(cancer_media.front().grid(), pml.thickness);
  return synthesize_measurements(simulate_fields(cancer_media, cells, pml),
                                 simulate_fields(background_media, cells, pml), freqs);
}

std::vector<cplx> breast_scatter_reference(const FieldBank& healthy, const FieldBank& bolus_only) {
  check_banks(healthy, bolus_only, healthy.size());
  return monostatic_difference(healthy, bolus_only);
}

MeasurementSet add_noise(const MeasurementSet& m, std::span<const cplx> reference, double snr_db,
                         std::uint64_t seed) {
  if (std::isinf(snr_db) && snr_db > 0) return m;
  if (std::isnan(snr_db) || std::isinf(snr_db)) {
    throw ConfigurationError("add_noise: snr_db must be finite or +inf");
  }
  if (m.y.empty()) throw ConfigurationError("add_noise: empty measurement vector");
  const double ref = l2_norm(reference);
  const double power = ref * ref / std::pow(10.0, snr_db / 10.0) / static_cast<double>(m.y.size());
  const double sigma = std::sqrt(power);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, sigma / std::sqrt(2.0));
  MeasurementSet out = m;
  for (auto& v : out.y) {
    const double re = normal(rng);
    const double im = normal(rng);
    v += cplx(re, im);
  }
  out.snr_db = snr_db;
  out.seed = seed;
  out.noise_sigma = sigma;
  return out;
}

double model_error_fraction(const SensingMatrix& a, std::span<const cplx> y,
                            std::span<const cplx> x) {
  if (y.size() != a.m()) throw ConfigurationError("model_error_fraction: length mismatch");
  auto ax = a.apply(x);
  for (std::size_t k = 0; k < y.size(); ++k) ax[k] = y[k] - ax[k];
  return l2_norm(ax) / l2_norm(y);
}

void write_measurements_csv(const MeasurementSet& m, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << "antenna,frequency_hz,real,imag\n" << std::setprecision(17);
  for (std::size_t k = 0; k < m.y.size(); ++k) {
    out << m.rows[k].antenna << ',' << m.rows[k].hz << ',' << m.y[k].real() << ','
        << m.y[k].imag() << '\n';
  }
}

MeasurementSet read_measurements_csv(const std::filesystem::path& path,
                                     const FrequencySet& freqs) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read " + path.string());
  std::string line;
  std::getline(in, line);
  if (line != "antenna,frequency_hz,real,imag") {
    throw ParseError(path.string() + ":1: unexpected header");
  }
  MeasurementSet m;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::size_t a = 0;
    double hz = 0, re = 0, im = 0;
    char c1 = 0, c2 = 0, c3 = 0;
    if (!(ss >> a >> c1 >> hz >> c2 >> re >> c3 >> im) || c1 != ',' || c2 != ',' || c3 != ',') {
      throw ParseError(path.string() + ":" + std::to_string(lineno) + ": malformed record");
    }
    std::size_t f = freqs.size();
    for (std::size_t k = 0; k < freqs.size(); ++k) {
      if (std::abs(freqs.hz(k) - hz) <= 1e-9 * hz) f = k;
    }
    if (f == freqs.size()) {
      throw ParseError(path.string() + ":" + std::to_string(lineno) + ": unknown frequency");
    }
    m.rows.push_back({a, f, freqs.hz(f)});
    m.y.emplace_back(re, im);
  }
  return m;
}

}  // namespace nrics
