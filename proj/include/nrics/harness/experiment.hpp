#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nrics/core/antenna.hpp"
#include "nrics/core/frequency.hpp"
#include "nrics/fdfd/pml.hpp"
#include "nrics/harness/metric.hpp"
#include "nrics/inversion/solver.hpp"
#include "nrics/phantom/phantom.hpp"
#include "nrics/sensing/measurements.hpp"

namespace nrics {

struct SolverSettings {
  /// Unset means the default rule (default_lambda / default_mu).
  std::optional<double> lambda;
  std::optional<double> mu;
  double noise_kappa = 1.0;
  SolverConfig base;
};

struct ScenarioSettings {
  double segmentation_error_percent = 0.0;
  /// Unset means noiseless.
  std::optional<double> snr_db;
  std::uint64_t segmentation_seed = 0;
  std::uint64_t noise_seed = 0;
};

struct ExperimentConfig {
  std::string name = "base";
  std::filesystem::path phantom;
  LesionSpec lesion;
  TissueLibrary tissues;
  std::vector<Point2> antennas;
  std::vector<double> frequencies_hz;
  PMLConfig pml;
  SolverSettings solver;
  ScenarioSettings scenario;
  double success_threshold = 1.5;
  std::filesystem::path output_dir = "out";
  std::map<std::string, ScenarioSettings> scenarios;

  /// Copy with the named scenario applied. Throws ConfigurationError for an
  /// unknown name.
  ExperimentConfig with_scenario(const std::string& name) const;
};

/// Relative paths inside the file resolve against its directory.
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

struct Diagnostics {
  std::size_t m = 0;
  std::size_t n = 0;
  /// 20 log10(||s|| / ||y||) for the noiseless lesion signal y.
  double breast_to_lesion_db = 0.0;
  /// 20 log10(||y|| / ||eta||); infinite when noiseless.
  double lesion_snr_db = 0.0;
  double born_error = 0.0;
  double lambda = 0.0;
  double mu = 0.0;
  double min_re_margin = 0.0;
  double min_im_margin = 0.0;
};

struct ExperimentResult {
  LocalizationResult localization;
  Diagnostics diagnostics;
  SolveReport solve;
  ContrastImage x_true;
  ContrastImage x_hat;
  MeasurementSet measurements;
  std::vector<CellIndex> antenna_cells;
  CellMask lesion;
  /// Flat key/value summary in output order.
  std::vector<std::pair<std::string, std::string>> summary;
};

/// Runs the full pipeline. Any failure is rethrown as StageError naming the
/// stage. Writes artifacts when `write_outputs` is set.
ExperimentResult run_experiment(const ExperimentConfig& cfg, bool write_outputs = true);

std::string summary_text(const ExperimentResult& r);

}  // namespace nrics
