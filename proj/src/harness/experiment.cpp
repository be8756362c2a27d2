#include "nrics/harness/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <set>

#include "json.hpp"
#include "nrics/core/error.hpp"
#include "nrics/harness/render.hpp"
#include "nrics/phantom/tissue_map.hpp"
#include "nrics/simd/kernels.hpp"

namespace nrics {

using nlohmann::json;

namespace {

void reject_unknown(const json& j, std::initializer_list<const char*> keys, const std::string& where) {
  std::set<std::string> ok(keys.begin(), keys.end());
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!ok.count(it.key())) throw ConfigurationError(where + ": unknown key '" + it.key() + "'");
  }
}

Point2 point(const json& j) {
  if (!j.is_array() || j.size() != 2) throw ConfigurationError("expected [x, y]");
  return {j[0].get<double>(), j[1].get<double>()};
}

DebyeTissue debye(const json& j) {
  reject_unknown(j, {"eps_inf", "delta_eps", "tau_s", "sigma_s"}, "debye");
  return {j.at("eps_inf").get<double>(), j.at("delta_eps").get<double>(),
          j.at("tau_s").get<double>(), j.at("sigma_s").get<double>()};
}

std::optional<double> auto_or_value(const json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() != "auto") throw ConfigurationError("expected a number or \"auto\"");
    return std::nullopt;
  }
  return j.get<double>();
}

void read_scenario(const json& j, ScenarioSettings& s) {
  if (j.contains("segmentation_error_percent")) {
    s.segmentation_error_percent = j["segmentation_error_percent"].get<double>();
  }
  if (j.contains("snr_db")) {
    s.snr_db = j["snr_db"].is_null() ? std::nullopt : std::optional<double>(j["snr_db"].get<double>());
  }
  if (j.contains("seeds")) {
    const auto& sd = j["seeds"];
    reject_unknown(sd, {"segmentation", "noise"}, "seeds");
    if (sd.contains("segmentation")) s.segmentation_seed = sd["segmentation"].get<std::uint64_t>();
    if (sd.contains("noise")) s.noise_seed = sd["noise"].get<std::uint64_t>();
  }
}

std::string fmt(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

template <class F>
auto stage(const char* name, F&& f) {
  try {
    return f();
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(name, e.what());
  }
}

CellMask mask_from(std::size_t size, std::span<const std::size_t> cells) {
  CellMask m(size);
  for (auto n : cells) m.set(n);
  return m;
}

}  // namespace

ExperimentConfig ExperimentConfig::with_scenario(const std::string& scenario_name) const {
  auto it = scenarios.find(scenario_name);
  if (it == scenarios.end()) throw ConfigurationError("unknown scenario '" + scenario_name + "'");
  ExperimentConfig c = *this;
  c.name = scenario_name;
  c.scenario = it->second;
  return c;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigurationError("cannot read config " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  const auto base = path.parent_path();
  auto resolve = [&](const std::string& p) {
    std::filesystem::path q(p);
    return q.is_absolute() ? q : base / q;
  };

  ExperimentConfig c;
  try {
    reject_unknown(j,
                   {"phantom", "output_dir", "frequencies_hz", "antennas_m", "pml", "lesion",
                    "tissues", "solver", "success_threshold", "segmentation_error_percent",
                    "snr_db", "seeds", "scenarios"},
                   "config");
    c.phantom = resolve(j.at("phantom").get<std::string>());
    if (j.contains("output_dir")) c.output_dir = resolve(j["output_dir"].get<std::string>());
    c.frequencies_hz = j.at("frequencies_hz").get<std::vector<double>>();
    for (const auto& a : j.at("antennas_m")) c.antennas.push_back(point(a));
    if (j.contains("pml")) {
      const auto& p = j["pml"];
      reject_unknown(p, {"thickness", "max_sigma", "polynomial_order"}, "pml");
      c.pml.thickness = p.value("thickness", c.pml.thickness);
      c.pml.max_sigma = p.value("max_sigma", c.pml.max_sigma);
      c.pml.polynomial_order = p.value("polynomial_order", c.pml.polynomial_order);
    }
    const auto& l = j.at("lesion");
    reject_unknown(l, {"center_m", "radius_m", "debye"}, "lesion");
    c.lesion.center = point(l.at("center_m"));
    c.lesion.radius = l.at("radius_m").get<double>();
    if (l.contains("debye")) c.lesion.tissue = debye(l["debye"]);
    if (j.contains("tissues")) {
      const auto& t = j["tissues"];
      reject_unknown(t, {"fat", "fibroglandular", "skin", "muscle", "bolus"}, "tissues");
      if (t.contains("fat")) c.tissues.fat = debye(t["fat"]);
      if (t.contains("fibroglandular")) c.tissues.fibroglandular = debye(t["fibroglandular"]);
      if (t.contains("skin")) c.tissues.skin = debye(t["skin"]);
      if (t.contains("muscle")) c.tissues.muscle = debye(t["muscle"]);
      if (t.contains("bolus")) c.tissues.bolus = debye(t["bolus"]);
    }
    c.tissues.lesion = c.lesion.tissue;
    if (j.contains("solver")) {
      const auto& s = j["solver"];
      reject_unknown(s,
                     {"lambda", "mu", "noise_kappa", "max_iters", "tol", "window",
                      "continuation_steps", "continuation_factor", "lipschitz_safety"},
                     "solver");
      auto& b = c.solver.base;
      if (s.contains("lambda")) c.solver.lambda = auto_or_value(s["lambda"]);
      if (s.contains("mu")) c.solver.mu = auto_or_value(s["mu"]);
      c.solver.noise_kappa = s.value("noise_kappa", c.solver.noise_kappa);
      b.max_iters = s.value("max_iters", b.max_iters);
      b.tol = s.value("tol", b.tol);
      b.window = s.value("window", b.window);
      b.continuation_steps = s.value("continuation_steps", b.continuation_steps);
      b.continuation_factor = s.value("continuation_factor", b.continuation_factor);
      b.lipschitz_safety = s.value("lipschitz_safety", b.lipschitz_safety);
    }
    c.success_threshold = j.value("success_threshold", c.success_threshold);
    read_scenario(j, c.scenario);
    if (j.contains("scenarios")) {
      for (auto it = j["scenarios"].begin(); it != j["scenarios"].end(); ++it) {
        reject_unknown(it.value(), {"segmentation_error_percent", "snr_db", "seeds"},
                       "scenario " + it.key());
        ScenarioSettings s = c.scenario;
        read_scenario(it.value(), s);
        c.scenarios[it.key()] = s;
      }
    }
  } catch (const json::exception& e) {
    throw ConfigurationError(path.string() + ": " + e.what());
  }
  return c;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg, bool write_outputs) {
  const auto& sc = cfg.scenario;

  struct Setup {
    FrequencySet freqs;
    AntennaArray antennas;
  };
  Setup setup = stage("config", [&] {
    cfg.pml.validate();
    cfg.tissues.validate();
    cfg.lesion.tissue.validate();
    if (!(cfg.success_threshold > 0)) throw ConfigurationError("success_threshold must be > 0");
    if (sc.segmentation_error_percent < 0) {
      throw ConfigurationError("segmentation_error_percent must be >= 0");
    }
    if (sc.snr_db && !std::isfinite(*sc.snr_db)) throw ConfigurationError("snr_db must be finite");
    if (cfg.solver.lambda && !(*cfg.solver.lambda > 0)) throw ConfigurationError("lambda must be > 0");
    if (cfg.solver.mu && !(*cfg.solver.mu > 0)) throw ConfigurationError("mu must be > 0");
    return Setup{FrequencySet(cfg.frequencies_hz), AntennaArray(cfg.antennas)};
  });
  const std::size_t nf = setup.freqs.size();

  const TissueMap truth = stage("phantom", [&] { return load_tissue_map(cfg.phantom); });
  const Grid2D grid = truth.grid();
  const CellMask support = truth.breast_mask();

  const TissueMap model = stage("segmentation", [&] {
    return sc.segmentation_error_percent > 0
               ? corrupt_fat_map(truth, sc.segmentation_error_percent, sc.segmentation_seed)
               : truth;
  });
  const bool exact_model = !(sc.segmentation_error_percent > 0);

  struct Media {
    std::vector<ComplexPermittivityMap> healthy, model, cancer, bolus;
    std::vector<std::size_t> lesion_cells;
  };
  Media media = stage("media", [&] {
    Media m;
    CellMask body = support;
    for (auto n : truth.mask_of(Tissue::skin).indices()) body.set(n);
    for (std::size_t f = 0; f < nf; ++f) {
      const double w = setup.freqs.omega(f);
      m.healthy.push_back(build_background(truth, w, cfg.tissues));
      m.model.push_back(build_background(model, w, cfg.tissues));
      auto ins = insert_lesion(truth, m.healthy.back(), cfg.lesion, w);
      if (ins.warning) std::cerr << "warning: " << *ins.warning << '\n';
      m.cancer.push_back(std::move(ins.medium));
      m.lesion_cells = ins.cells;
      m.bolus.push_back(build_bolus_only(grid, w, cfg.tissues));
      check_margin(m.healthy.back(), body, cfg.pml);
    }
    return m;
  });
  const CellMask lesion = mask_from(grid.size(), media.lesion_cells);

  const auto antenna_cells =
      stage("antennas", [&] {
        auto cells = setup.antennas.cells(grid, cfg.pml.thickness);
        const CellMask bolus = truth.mask_of(Tissue::bolus);
        for (std::size_t a = 0; a < cells.size(); ++a) {
          if (!bolus[grid.linear(cells[a])]) {
            throw ConfigurationError("antenna " + std::to_string(a) + " is not in the bolus");
          }
        }
        return cells;
      });

  struct Banks {
    FieldBank healthy, model, cancer, bolus;
  };
  const Banks banks = stage("forward", [&] {
    Banks b;
    b.healthy = simulate_fields(media.healthy, antenna_cells, cfg.pml);
    b.model = exact_model ? b.healthy : simulate_fields(media.model, antenna_cells, cfg.pml);
    b.cancer = simulate_fields(media.cancer, antenna_cells, cfg.pml);
    b.bolus = simulate_fields(media.bolus, antenna_cells, cfg.pml);
    return b;
  });

  struct Sensing {
    SensingMatrix a;
    MeasurementSet clean;
    std::vector<cplx> lesion_signal;
    std::vector<cplx> reference;
  };
  Sensing sens = stage("sensing", [&] {
    std::vector<double> hz(setup.freqs.hz().begin(), setup.freqs.hz().end());
    Sensing s{build_sensing_matrix(banks.model, media.model, hz, support), {}, {}, {}};
    s.clean = synthesize_measurements(banks.cancer, banks.model, setup.freqs);
    s.lesion_signal = synthesize_measurements(banks.cancer, banks.healthy, setup.freqs).y;
    s.reference = breast_scatter_reference(banks.healthy, banks.bolus);
    return s;
  });

  const MeasurementSet meas = stage("noise", [&] {
    return sc.snr_db ? add_noise(sens.clean, sens.reference, *sc.snr_db, sc.noise_seed)
                     : sens.clean;
  });

  // Contrast is referred to the modelled background at band centre.
  const double wc = setup.freqs.center_omega();
  const auto model_c = build_background(model, wc, cfg.tissues);
  const FeasibleRegion region =
      stage("inversion", [&] { return FeasibleRegion(restrict_to(model_c, support)); });

  ExperimentResult r{{}, {}, {}, ContrastImage::zeros(grid, support),
                     ContrastImage::zeros(grid, support), meas, antenna_cells, lesion, {}};
  r.solve = stage("inversion", [&] {
    SolverConfig sc_ = cfg.solver.base;
    sc_.lambda = cfg.solver.lambda ? *cfg.solver.lambda
                                   : default_lambda(sens.a.a, meas.y, meas.noise_sigma,
                                                    cfg.solver.noise_kappa);
    sc_.mu = cfg.solver.mu ? *cfg.solver.mu : default_mu(sens.a.a, meas.y);
    r.diagnostics.lambda = sc_.lambda;
    r.diagnostics.mu = sc_.mu;
    return nesterov_solve(sens.a.a, meas.y, region, sc_);
  });

  stage("metrics", [&] {
    const auto truth_c = build_background(truth, wc, cfg.tissues);
    const auto cancer_c = insert_lesion(truth, truth_c, cfg.lesion, wc).medium;
    r.x_true = contrast_from_permittivity(cancer_c, model_c, support);
    r.x_hat = ContrastImage(grid, support, r.solve.x);
    r.localization = localization_metric(r.x_hat, lesion, cfg.success_threshold);

    auto& d = r.diagnostics;
    d.m = sens.a.m();
    d.n = sens.a.n();
    d.breast_to_lesion_db =
        20.0 * std::log10(l2_norm(sens.reference) / l2_norm(sens.lesion_signal));
    std::vector<cplx> eta(meas.y.size());
    for (std::size_t k = 0; k < eta.size(); ++k) eta[k] = meas.y[k] - sens.clean.y[k];
    const double en = l2_norm(eta);
    d.lesion_snr_db = en > 0 ? 20.0 * std::log10(l2_norm(sens.clean.y) / en)
                             : std::numeric_limits<double>::infinity();
    d.born_error = model_error_fraction(sens.a, sens.clean.y, r.x_true.values());
    d.min_re_margin = d.min_im_margin = std::numeric_limits<double>::infinity();
    const auto eb = region.eps_b();
    for (std::size_t n = 0; n < eb.size(); ++n) {
      const cplx w = eb[n] * r.solve.x[n] + eb[n];
      d.min_re_margin = std::min(d.min_re_margin, w.real() - 1.0);
      d.min_im_margin = std::min(d.min_im_margin, w.imag());
    }
    return 0;
  });

  const auto& d = r.diagnostics;
  const auto& s = r.solve;
  auto& kv = r.summary;
  kv = {{"scenario", cfg.name},
        {"segmentation_error_percent", fmt(sc.segmentation_error_percent)},
        {"segmentation_seed", std::to_string(sc.segmentation_seed)},
        {"snr_db", sc.snr_db ? fmt(*sc.snr_db) : "none"},
        {"noise_seed", std::to_string(sc.noise_seed)},
        {"kernels", std::string(simd::name(simd::active_level()))},
        {"measurements", std::to_string(d.m)},
        {"unknowns", std::to_string(d.n)},
        {"lesion_cells", std::to_string(lesion.count())},
        {"breast_to_lesion_db", fmt(d.breast_to_lesion_db)},
        {"lesion_snr_db", fmt(d.lesion_snr_db)},
        {"born_error", fmt(d.born_error)},
        {"lambda", fmt(d.lambda)},
        {"mu", fmt(d.mu)},
        {"norm_a", fmt(s.norm_a)},
        {"iterations", std::to_string(s.iterations)},
        {"converged", s.converged ? "true" : "false"},
        {"objective", fmt(s.objective)},
        {"residual", fmt(s.residual)},
        {"l1", fmt(s.l1)},
        {"min_re_margin", fmt(d.min_re_margin)},
        {"min_im_margin", fmt(d.min_im_margin)},
        {"peak_in_ratio", fmt(r.localization.peak_in_ratio)},
        {"centroid_error_cells", fmt(r.localization.centroid_error_cells)},
        {"success_threshold", fmt(cfg.success_threshold)},
        {"success", r.localization.success ? "true" : "false"}};

  if (write_outputs) {
    stage("output", [&] {
      const auto& out = cfg.output_dir;
      std::filesystem::create_directories(out);
      RenderOverlay ov{antenna_cells, support, lesion};
      render_image(r.x_true, out / "x_true.png", ov);
      render_image(r.x_hat, out / "x_hat.png", ov);
      write_trace_csv(r.solve, out / "objective_trace.csv");
      write_measurements_csv(meas, out / "measurements.csv");
      std::ofstream f(out / "summary.txt");
      f << summary_text(r);
      if (!f) throw Error("cannot write summary");
      return 0;
    });
  }
  return r;
}

std::string summary_text(const ExperimentResult& r) {
  std::string s;
  for (const auto& [k, v] : r.summary) s += k + ' ' + v + '\n';
  return s;
}

}  // namespace nrics
