#include "fraclap/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>

#include "fraclap/barriers.hpp"
#include "fraclap/csv.hpp"
#include "fraclap/diagnostics.hpp"
#include "fraclap/exponents.hpp"
#include "fraclap/field_io.hpp"

namespace fraclap {

namespace fs = std::filesystem;

Grid grid_from_config(const RunConfig& cfg) {
  const double g = cfg.grading > 0.0 ? cfg.grading
                                     : default_grading_exponent(cfg.params.a);
  return build_grid(cfg.x_lo, cfg.x_hi, cfg.height, cfg.nx, cfg.ny, g,
                    cfg.params.a);
}

BoundaryData boundary_from_config(const RunConfig& cfg, const Grid& grid) {
  switch (cfg.preset) {
    case BoundaryPreset::Constant:
      return BoundaryData::constant(cfg.params, grid, cfg.amplitude);
    case BoundaryPreset::MirrorCrossing:
      return BoundaryData::mirror_crossing(cfg.params, grid, cfg.amplitude);
    case BoundaryPreset::CustomSamples: {
      // Samples come from a field file with matching shape; its boundary
      // values define the Dirichlet closure.
      Field f = load_field(cfg.samples_file);
      if (f.grid.nx() != grid.nx() || f.grid.ny() != grid.ny() ||
          f.params.k != cfg.params.k)
        throw IoError("custom samples: shape mismatch with the run grid");
      BoundaryData b;
      const int nx = grid.nx(), ny = grid.ny();
      b.top.assign(cfg.params.k, std::vector<double>(nx, 0.0));
      b.left.assign(cfg.params.k, std::vector<double>(ny, 0.0));
      b.right.assign(cfg.params.k, std::vector<double>(ny, 0.0));
      b.frozen.assign(cfg.params.k, false);
      b.tag = "CUSTOM_SAMPLES:" + cfg.samples_file;
      for (int c = 0; c < cfg.params.k; ++c) {
        for (int i = 0; i < nx; ++i)
          b.top[c][i] = f.values[c][f.grid.index(i, ny - 1)];
        for (int j = 0; j < ny; ++j) {
          b.left[c][j] = f.values[c][f.grid.index(0, j)];
          b.right[c][j] = f.values[c][f.grid.index(nx - 1, j)];
        }
      }
      return b;
    }
  }
  throw std::logic_error("unreachable boundary preset");
}

namespace {

struct Emitter {
  fs::path dir;
  std::vector<ManifestEntry> entries;
  std::vector<std::pair<std::string, double>> timings;
  std::vector<std::string> names;

  void emit(const std::string& name, const std::string& bytes) {
    write_file((dir / name).string(), bytes);
    entries.push_back({name, fnv1a64(bytes), bytes.size()});
    names.push_back(name);
  }
  void emit_field(const std::string& name, const Field& f) {
    save_field(f, (dir / name).string());
    const std::string bytes = read_file((dir / name).string());
    entries.push_back({name, fnv1a64(bytes), bytes.size()});
    names.push_back(name);
  }
  void finish() {
    write_manifest((dir / "manifest.txt").string(), entries, timings);
    names.push_back("manifest.txt");
  }
};

std::string solve_report_csv(const SolveReport& rep) {
  CsvWriter csv({"iterations", "residual", "converged"});
  csv.add_row({std::to_string(rep.iterations), format_double(rep.final_residual),
               rep.converged ? "1" : "0"});
  return csv.str();
}

std::string sweep_csv(const SweepRecord& rec) {
  CsvWriter csv({"step", "beta", "iterations", "residual", "overlap_12",
                 "beta_overlap_12", "trace_product_12", "reflection_residual"});
  const int k = rec.k;
  for (int s = 0; s < rec.steps(); ++s) {
    const double o12 = k >= 2 ? rec.overlap[s][0 * k + 1] : 0.0;
    const double bo12 = k >= 2 ? rec.beta_overlap[s][0 * k + 1] : 0.0;
    const double tp12 = k >= 2 ? rec.trace_product[s][0 * k + 1] : 0.0;
    csv.add_row({std::to_string(s), format_double(rec.beta[s]),
                 std::to_string(rec.iterations[s]),
                 format_double(rec.final_residual[s]), format_double(o12),
                 format_double(bo12), format_double(tp12),
                 format_double(rec.reflection_residual[s])});
  }
  return csv.str();
}

std::string radial_csv(const RadialProfile& prof) {
  CsvWriter csv({"center_x", "r", "value"});
  for (size_t i = 0; i < prof.radii.size(); ++i)
    csv.add_row_values({prof.center_x, prof.radii[i], prof.values[i]});
  return csv.str();
}

bool wants(const RunConfig& cfg, const std::string& name) {
  if (cfg.diagnostics.empty()) return false;
  return std::find(cfg.diagnostics.begin(), cfg.diagnostics.end(), name) !=
         cfg.diagnostics.end();
}

void emit_diagnostics(Emitter& em, const RunConfig& cfg, const Field& field) {
  const Grid& g = field.grid;
  CsvWriter scalars({"name", "value"});
  auto add_scalar = [&](const std::string& n, double v) {
    scalars.add_row({n, format_double(v)});
  };

  const double fb_thresh = cfg.fb_threshold > 0.0
                               ? cfg.fb_threshold
                               : default_fb_threshold(cfg.solver.tolerance);

  if (wants(cfg, "holder")) {
    const double w = g.x_hi() - g.x_lo();
    Box sub{g.x_lo() + 0.25 * w, g.x_hi() - 0.25 * w, 0.0, 0.5 * g.height()};
    for (int c = 0; c < field.params.k; ++c)
      add_scalar("holder_quotient_" + std::to_string(c + 1),
                 holder_quotient(field, c, cfg.holder_alpha, sub));
  }
  if (wants(cfg, "reflection") && field.params.k == 2)
    add_scalar("reflection_residual", reflection_residual(field));
  if (wants(cfg, "segregation")) {
    auto res = segregation_system_residual(field);
    for (int c = 0; c < field.params.k; ++c) {
      add_scalar("segregation_upper_" + std::to_string(c + 1), res.upper[c]);
      add_scalar("segregation_lower_" + std::to_string(c + 1), res.lower[c]);
      add_scalar("segregation_compl_" + std::to_string(c + 1),
                 res.complementarity[c]);
    }
  }
  if (wants(cfg, "morrey"))
    em.emit("morrey_radial.csv",
            radial_csv(morrey_quotient(field, cfg.center_x, cfg.radii,
                                       cfg.morrey_eps)));
  if (wants(cfg, "almgren")) {
    auto res = almgren_EH(field, 0, cfg.center_x, cfg.radii);
    em.emit("almgren_E_radial.csv", radial_csv(res.E));
    em.emit("almgren_H_radial.csv", radial_csv(res.H));
    RadialProfile idres{res.E.center_x, res.E.radii, res.identity_residual};
    em.emit("almgren_identity_radial.csv", radial_csv(idres));
  }
  if (wants(cfg, "acf") && field.params.k >= 2) {
    auto hf = hat_field(field);
    std::vector<double> zp(hf.values[0].size()), zn(hf.values[0].size());
    for (size_t i = 0; i < zp.size(); ++i) {
      zp[i] = std::max(hf.values[0][i], 0.0);
      zn[i] = std::max(-hf.values[0][i], 0.0);
    }
    try {
      em.emit("acf_radial.csv",
              radial_csv(acf_quotient(g, zp, zn, cfg.center_x, cfg.acf_mu,
                                      cfg.radii)));
    } catch (const std::invalid_argument& e) {
      // ACF requires segregated factors vanishing at the center; record why
      // it was skipped instead of failing the whole diagnose run.
      em.emit("acf_skipped.txt", std::string(e.what()) + "\n");
    }
  }
  if (wants(cfg, "free_boundary") || wants(cfg, "exponent_fit")) {
    auto fb = free_boundary(field, fb_thresh);
    CsvWriter fbcsv({"index", "x"});
    for (int idx : fb)
      fbcsv.add_row({std::to_string(idx), format_double(g.x_nodes[idx])});
    em.emit("free_boundary.csv", fbcsv.str());
    if (!fb.empty()) {
      // Representative point: closest to the cluster median.
      const int x0 = fb[fb.size() / 2];
      add_scalar("free_boundary_x", g.x_nodes[x0]);
      add_scalar("multiplicity",
                 multiplicity(field, x0, fb_thresh, 4.0 * g.dx()));
      if (wants(cfg, "exponent_fit")) {
        for (int c = 0; c < field.params.k; ++c) {
          try {
            const double e = fit_local_exponent(g.x_nodes, field.trace(c), x0,
                                                cfg.radii);
            add_scalar("local_exponent_" + std::to_string(c + 1), e);
          } catch (const std::invalid_argument&) {
            add_scalar("local_exponent_" + std::to_string(c + 1),
                       std::numeric_limits<double>::quiet_NaN());
          }
        }
      }
    }
  }
  em.emit("scalars.csv", scalars.str());
}

}  // namespace

RunResult run_scenario(Scenario scenario, const RunConfig& cfg,
                       const std::string& out_dir, int threads) {
  Emitter em;
  em.dir = out_dir;
  fs::create_directories(em.dir);
  SolverConfig solver = cfg.solver;
  solver.threads = threads;

  switch (scenario) {
    case Scenario::Solve: {
      const Grid grid = grid_from_config(cfg);
      BoundaryData bdata = boundary_from_config(cfg, grid);
      Field init = Field::zeros(cfg.params, grid);
      auto [field, rep] = solve_system(cfg.params, grid, bdata, init, solver);
      em.emit_field("field.txt", field);
      em.emit("solve_report.csv", solve_report_csv(rep));
      em.timings.push_back({"solve", rep.wall_time});
      if (!cfg.diagnostics.empty()) emit_diagnostics(em, cfg, field);
      break;
    }
    case Scenario::SweepBeta: {
      const Grid grid = grid_from_config(cfg);
      BoundaryData bdata = boundary_from_config(cfg, grid);
      auto [field, rec] = continue_beta(cfg.params, grid, bdata, cfg.ladder,
                                        solver);
      em.emit("sweep.csv", sweep_csv(rec));
      em.emit_field("field.txt", field);
      double total = 0.0;
      for (double w : rec.wall_time) total += w;
      em.timings.push_back({"sweep", total});
      if (!cfg.diagnostics.empty()) {
        RunConfig dcfg = cfg;
        dcfg.params.beta = rec.beta.back();
        emit_diagnostics(em, dcfg, field);
      }
      break;
    }
    case Scenario::Diagnose: {
      if (cfg.field_file.empty())
        throw ConfigError(0, "field_file", "DIAGNOSE requires field_file");
      Field field = load_field(cfg.field_file);
      RunConfig dcfg = cfg;
      if (dcfg.diagnostics.empty())
        dcfg.diagnostics = {"holder",  "reflection",   "segregation",
                            "morrey",  "almgren",      "acf",
                            "free_boundary", "exponent_fit"};
      emit_diagnostics(em, dcfg, field);
      break;
    }
    case Scenario::Exponents: {
      CsvWriter csv({"s", "nu", "mu", "theta_star"});
      OptimConfig ocfg;
      for (double s : cfg.s_grid) {
        auto mu = optimize_mu(s, cfg.resolution, ocfg);
        auto nu = optimize_nu(s, cfg.resolution, ocfg);
        double theta_star = 0.0, best = 1e300;
        for (const auto& [prm, v] : mu.trace)
          if (v < best) {
            best = v;
            theta_star = prm[0];
          }
        csv.add_row_values({s, nu.value, mu.value, theta_star});
      }
      em.emit("exponents.csv", csv.str());
      break;
    }
    case Scenario::BarrierCheck: {
      CsvWriter csv({"M", "p", "s", "delta", "lhs", "rhs", "margin", "passed"});
      double total = 0.0;
      for (double s : cfg.barrier_s)
        for (double p : cfg.barrier_p)
          for (double M : cfg.barrier_M) {
            const double delta = cfg.barrier_delta;
            auto dc = run_decay_case(s, p, M, delta, delta, cfg.barrier_nx,
                                     cfg.barrier_ny, solver,
                                     DecayClosure::Profile);
            auto bp = BarrierParams::make(1.0 - 2.0 * s, p, M, delta);
            auto res = decay_check(dc.field, dc.bdata, bp);
            total += dc.report.wall_time;
            csv.add_row({format_double(M), format_double(p), format_double(s),
                         format_double(delta), format_double(res.lhs),
                         format_double(res.rhs), format_double(res.margin),
                         res.ok ? "1" : "0"});
          }
      em.emit("decay_grid.csv", csv.str());
      em.timings.push_back({"barrier_check", total});
      break;
    }
  }
  em.finish();
  return RunResult{em.names};
}

}  // namespace fraclap
