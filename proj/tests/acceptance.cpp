// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <string>

#include "nrics/harness/experiment.hpp"
#include "nrics/phantom/generator.hpp"
#include "nrics/validation/oracles.hpp"

using namespace nrics;
namespace fs = std::filesystem;

namespace {

const fs::path kConfig = fs::path(NRICS_SOURCE_DIR) / "configs/reference.json";

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* title, const std::function<Outcome()>& body) {
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  if (!o.pass) ++failures;
  std::printf("%s %2d %s: %s\n", o.pass ? "PASS" : "FAIL", id, title, o.detail.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, auto... v) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, v...);
  return buf;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main() {
  const ExperimentConfig cfg = load_experiment_config(kConfig);
  const TissueMap phantom = load_tissue_map(cfg.phantom);
  const auto antenna_cells = AntennaArray(cfg.antennas).cells(phantom.grid(), cfg.pml.thickness);

  criterion(1, "FDFD vs Hankel line source", [&] {
    bool ok = true;
    std::string d;
    for (double hz : cfg.frequencies_hz) {
      const auto r = oracle::hankel_check(hz, 10.0, phantom.grid().nx(), phantom.grid().ny(),
                                          phantom.grid().dx(), cfg.pml);
      ok = ok && r.rel_l2 <= 0.02 && r.seconds <= 10.0;
      d += fmt("%.0f MHz err %.2e in %.2f s; ", hz / 1e6, r.rel_l2, r.seconds);
    }
    return Outcome{ok, d + "limits 2e-2, 10 s"};
  });

  criterion(2, "reciprocity", [&] {
    double worst = 0.0;
    for (double hz : cfg.frequencies_hz) {
      worst = std::max(worst, oracle::reciprocity_check(phantom, antenna_cells, hz, cfg.pml).max_rel_diff);
    }
    return Outcome{worst <= 1e-10, fmt("max rel diff %.2e, limit 1e-10", worst)};
  });

  criterion(3, "Born consistency slope", [&] {
    const auto cell = phantom.grid().nearest_cell(cfg.lesion.center);
    if (!cell) return Outcome{false, "lesion centre outside the grid"};
    const auto r = oracle::born_consistency(phantom, antenna_cells, cfg.frequencies_hz,
                                            phantom.grid().linear(*cell), {1e-3, 1e-2, 1e-1}, cfg.pml);
    return Outcome{std::abs(r.slope - 1.0) <= 0.2,
                   fmt("errors %.2e %.2e %.2e, slope %.3f, want 1 +- 0.2", r.rel_err[0], r.rel_err[1],
                       r.rel_err[2], r.slope)};
  });

  criterion(4, "projection vs QP oracle", [&] {
    const auto r = oracle::projection_check(1000, 2024);
    const double diff = std::max(r.max_abs_diff, r.max_distance_gap);
    return Outcome{r.instances == 1000 && diff <= 1e-8 && r.seconds <= 5.0,
                   fmt("%zu instances, max diff %.2e in %.3f s; limits 1e-8, 5 s", r.instances, diff,
                       r.seconds)};
  });

  criterion(5, "gradient vs finite differences", [&] {
    const auto r = oracle::gradient_check(20, 2024);
    return Outcome{r.points == 20 && r.max_rel_err <= 1e-6,
                   fmt("%zu points, max rel err %.2e, limit 1e-6", r.points, r.max_rel_err)};
  });

  std::optional<ExperimentResult> runs[4];
  double secs[4] = {};
  const char* names[4] = {"A", "B", "C", "D"};
  std::string run_error;
  for (int s = 0; s < 4; ++s) {
    try {
      const auto t0 = std::chrono::steady_clock::now();
      runs[s] = run_experiment(cfg.with_scenario(names[s]), false);
      secs[s] = seconds_since(t0);
    } catch (const std::exception& e) {
      run_error += std::string(names[s]) + ": " + e.what() + "; ";
    }
  }

  criterion(6, "measurement count", [&] {
    if (!run_error.empty()) return Outcome{false, run_error};
    const auto m = runs[0]->diagnostics.m;
    return Outcome{m == 18 && runs[0]->measurements.y.size() == 18, fmt("M = %zu, want 18", m)};
  });

  criterion(7, "breast to lesion signal gap", [&] {
    if (!run_error.empty()) return Outcome{false, run_error};
    const double db = runs[0]->diagnostics.breast_to_lesion_db;
    return Outcome{std::abs(db - 40.0) <= 10.0, fmt("%.2f dB, want 40 +- 10", db)};
  });

  criterion(8, "scenario outcomes with shipped seeds", [&] {
    if (!run_error.empty()) return Outcome{false, run_error};
    const bool want[4] = {true, true, true, false};
    bool ok = true;
    std::string d;
    for (int s = 0; s < 4; ++s) {
      const auto& l = runs[s]->localization;
      ok = ok && l.success == want[s] && secs[s] <= 300.0;
      d += fmt("%s ratio %.3g %s (%.1f s); ", names[s], l.peak_in_ratio, l.success ? "located" : "missed",
               secs[s]);
    }
    return Outcome{ok, d + "want A B C located, D missed, each <= 300 s"};
  });

  criterion(9, "bit-identical summaries", [&] {
    const fs::path root = fs::temp_directory_path() / "nrics_acceptance";
    fs::remove_all(root);
    bool ok = true;
    for (const char* s : names) {
      std::string text[2];
      for (int rep = 0; rep < 2; ++rep) {
        auto c = cfg.with_scenario(s);
        c.output_dir = root / (std::string(s) + std::to_string(rep));
        run_experiment(c, true);
        text[rep] = slurp(c.output_dir / "summary.txt");
      }
      ok = ok && !text[0].empty() && text[0] == text[1];
    }
    fs::remove_all(root);
    return Outcome{ok, ok ? "A B C D each run twice, summary.txt identical" : "summaries differ"};
  });

  criterion(10, "feasibility of solver outputs", [&] {
    if (!run_error.empty()) return Outcome{false, run_error};
    double re = INFINITY, im = INFINITY;
    for (const auto& r : runs) {
      re = std::min(re, r->diagnostics.min_re_margin);
      im = std::min(im, r->diagnostics.min_im_margin);
    }
    return Outcome{re >= -1e-12 && im >= -1e-12,
                   fmt("min Re(w) - 1 = %.3g, min Im(w) = %.3g over A-D, limit -1e-12", re, im)};
  });

  std::printf("%s: %d failing\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
