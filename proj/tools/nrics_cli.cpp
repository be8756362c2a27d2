// Command-line front end: run scenarios, validate the field solver, self-test
// the inversion building blocks, generate the reference phantom.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "nrics/core/error.hpp"
#include "nrics/core/frequency.hpp"
#include "nrics/harness/experiment.hpp"
#include "nrics/phantom/generator.hpp"
#include "nrics/simd/kernels.hpp"
#include "nrics/validation/oracles.hpp"

namespace {

using namespace nrics;

int check(bool ok, const std::string& what) {
  std::printf("%s %s\n", ok ? "ok  " : "FAIL", what.c_str());
  return ok ? 0 : 1;
}

int cmd_run(const std::string& config, const std::string& scenario, const std::string& out) {
  auto cfg = load_experiment_config(config);
  std::vector<std::string> names;
  if (scenario.empty()) {
    names.push_back("");
  } else if (scenario == "all") {
    for (const auto& [k, v] : cfg.scenarios) names.push_back(k);
  } else {
    names.push_back(scenario);
  }
  for (const auto& name : names) {
    auto c = name.empty() ? cfg : cfg.with_scenario(name);
    if (!out.empty()) c.output_dir = out;
    if (names.size() > 1) c.output_dir /= name;
    const auto t0 = std::chrono::steady_clock::now();
    const auto r = run_experiment(c);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << summary_text(r);
    std::printf("elapsed_s %.1f\noutput %s\n\n", secs, c.output_dir.string().c_str());
  }
  return 0;
}

int cmd_validate_fdfd(const std::string& phantom_path) {
  int fails = 0;
  const auto freqs = FrequencySet::default_experiment();
  for (std::size_t f = 0; f < freqs.size(); ++f) {
    const auto h = oracle::hankel_check(freqs.hz(f));
    char buf[200];
    std::snprintf(buf, sizeof buf, "hankel %.0f MHz: rel l2 error %.3e over %zu cells (%.2f s)",
                  h.hz / 1e6, h.rel_l2, h.cells, h.seconds);
    fails += check(h.rel_l2 <= 0.02 && h.seconds <= 10.0, buf);
  }
  for (std::size_t f = 0; f < freqs.size(); ++f) {
    const auto p = oracle::pml_check(freqs.hz(f));
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "pml %.0f MHz: reflection %.1f dB below the field, outer edge %.1f dB below the peak",
                  p.hz / 1e6, p.attenuation_db, p.edge_db);
    fails += check(p.attenuation_db >= 40.0 && p.edge_db >= 40.0, buf);
  }
  const TissueMap t = phantom_path.empty()
                          ? make_reference_phantom(PhantomGeometry{}, kReferencePhantomSeed)
                          : load_tissue_map(phantom_path);
  const auto cells = AntennaArray(reference_antennas()).cells(t.grid(), PMLConfig{}.thickness);
  for (std::size_t f = 0; f < freqs.size(); ++f) {
    const auto r = oracle::reciprocity_check(t, cells, freqs.hz(f));
    char buf[200];
    std::snprintf(buf, sizeof buf, "reciprocity %.0f MHz: max rel diff %.2e over %zu pairs",
                  r.hz / 1e6, r.max_rel_diff, r.pairs);
    fails += check(r.max_rel_diff <= 1e-10, buf);
  }
  return fails;
}

int cmd_selftest() {
  int fails = 0;
  std::printf("kernels %s\n", std::string(simd::name(simd::active_level())).c_str());
  const auto p = oracle::projection_check(1000, 11);
  char buf[200];
  std::snprintf(buf, sizeof buf, "projection vs QP: max diff %.2e on %zu instances (%.3f s)",
                p.max_abs_diff, p.instances, p.seconds);
  fails += check(p.max_abs_diff <= 1e-8 && p.seconds <= 5.0, buf);
  const auto g = oracle::gradient_check(20, 12);
  std::snprintf(buf, sizeof buf, "gradient vs central differences: max rel err %.2e at %zu points",
                g.max_rel_err, g.points);
  fails += check(g.max_rel_err <= 1e-6, buf);

  SolverConfig cfg;
  cfg.lambda = 0.5;
  cfg.mu = 1e-3;
  cfg.tol = 1e-8;
  const std::vector<cplx> y{2.0, 0.0, 0.0};
  const auto rep = nesterov_solve(CMatrix::identity(3), y, FeasibleRegion({10.0, 10.0, 10.0}), cfg);
  const double err = std::abs(rep.x[0] - 1.5) + std::abs(rep.x[1]) + std::abs(rep.x[2]);
  std::snprintf(buf, sizeof buf, "soft threshold, identity operator: error %.2e", err);
  // objective-change stopping leaves x accurate to about sqrt(tol)
  fails += check(err <= 1e-4, buf);
  return fails;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Prior-informed compressive microwave breast imaging"};
  app.require_subcommand(1);

  std::string config, scenario, out, phantom, phantom_out = "reference_phantom.txt";
  std::uint64_t seed = nrics::kReferencePhantomSeed;
  auto* run = app.add_subcommand("run", "run the imaging pipeline");
  run->add_option("--config", config, "experiment JSON")->required()->check(CLI::ExistingFile);
  run->add_option("--scenario", scenario, "scenario name from the config (A, B, C, D or all)");
  run->add_option("--out", out, "output directory");
  auto* val = app.add_subcommand("validate-fdfd", "analytic, PML and reciprocity checks");
  val->add_option("--phantom", phantom, "phantom for the reciprocity check");
  app.add_subcommand("selftest", "projection, gradient and solver oracles");
  auto* mk = app.add_subcommand("make-phantom", "write the synthetic reference phantom");
  mk->add_option("--out", phantom_out, "output file");
  mk->add_option("--seed", seed, "texture seed");

  CLI11_PARSE(app, argc, argv);
  try {
    if (run->parsed()) return cmd_run(config, scenario, out) ? 1 : 0;
    if (val->parsed()) return cmd_validate_fdfd(phantom) ? 1 : 0;
    if (app.got_subcommand("selftest")) return cmd_selftest() ? 1 : 0;
    if (mk->parsed()) {
      nrics::save_tissue_map(nrics::make_reference_phantom(nrics::PhantomGeometry{}, seed),
                             phantom_out);
      return 0;
    }
  } catch (const nrics::StageError& e) {
    std::cerr << "error in stage " << e.stage() << ": " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
