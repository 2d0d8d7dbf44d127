// Acceptance suite: runs every acceptance scenario at desk scale and prints
// one [PASS]/[FAIL] line per criterion.  Exit code is the number of failed
// criteria.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "fraclap/barriers.hpp"
#include "fraclap/continuation.hpp"
#include "fraclap/csv.hpp"
#include "fraclap/diagnostics.hpp"
#include "fraclap/exponents.hpp"
#include "fraclap/field_io.hpp"
#include "fraclap/scenarios.hpp"

using namespace fraclap;

namespace {

constexpr double kPi = 3.14159265358979323846;

int g_failures = 0;

void report(int criterion, const char* what, bool pass) {
  std::printf("[%s] criterion %d: %s\n", pass ? "PASS" : "FAIL", criterion,
              what);
  if (!pass) ++g_failures;
  std::fflush(stdout);
}

double sup_err(const Field& f, int c,
               const std::function<double(double, double)>& exact) {
  double e = 0.0;
  const Grid& g = f.grid;
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i)
      e = std::max(e, std::fabs(f.at(c, i, j) -
                                exact(g.x_nodes[i], g.y_nodes[j])));
  return e;
}

// ---------------------------------------------------------------------------
// 1. Manufactured-solution convergence: f = -2s, data y^{2s}, k = 1.
//    The conormal discretization is exact on y^{2s}, so the solved error sits
//    at the solver floor on every grid; measured order >= 1 or both errors
//    below the exactness floor counts as convergent.
void criterion1() {
  const double floor_err = 1e-7;
  bool ok = true;
  for (double s : {0.25, 0.5, 0.75}) {
    auto pp = ProblemParams::make(s, 1, 1.0, 1.0, 0.0);
    pp.reactions[0] = ReactionSpec::constant(-2.0 * s);
    std::vector<double> errs;
    for (int n : {16, 32, 64, 128}) {
      Grid g = build_grid(-1.0, 1.0, 1.0, n + 1, n / 2 + 1,
                          default_grading_exponent(pp.a), pp.a);
      BoundaryData b = BoundaryData::constant(pp, g, 0.0);
      for (int i = 0; i < g.nx(); ++i)
        b.top[0][i] = std::pow(g.height(), 2.0 * s);
      for (int j = 0; j < g.ny(); ++j)
        b.left[0][j] = b.right[0][j] = std::pow(g.y_nodes[j], 2.0 * s);
      SolverConfig cfg;
      cfg.tolerance = 1e-11;
      cfg.max_sweeps = 400000;
      auto [f, rep] = solve_system(pp, g, b, Field::zeros(pp, g), cfg);
      ok = ok && rep.converged;
      errs.push_back(sup_err(f, 0, [s](double, double y) {
        return std::pow(y, 2.0 * s);
      }));
    }
    std::printf("  s=%.2f sup errors:", s);
    for (double e : errs) std::printf(" %.3e", e);
    bool conv = true;
    for (size_t m = 1; m < errs.size(); ++m) {
      const bool at_floor = errs[m] <= floor_err && errs[m - 1] <= floor_err;
      const double order = std::log2(errs[m - 1] / errs[m]);
      if (!at_floor && order < 1.0) conv = false;
    }
    std::printf("  (%s)\n", conv ? "order>=1 or at solver floor" : "NOT convergent");
    ok = ok && conv;
  }
  report(1, "manufactured y^{2s} solution, order >= 1 over dyadic refinements",
         ok);
}

// ---------------------------------------------------------------------------
// 2. Exact cases: constant data reproduced to 1e-10; mirror symmetry of the
//    symmetric k=2 scenario to solver tolerance.
void criterion2() {
  bool ok = true;
  {
    auto pp = ProblemParams::make(0.5, 1, 1.0, 1.0, 0.0);
    Grid g = build_grid(-1.0, 1.0, 1.0, 33, 17, 1.0, pp.a);
    BoundaryData b = BoundaryData::constant(pp, g, 2.0);
    SolverConfig cfg;
    cfg.tolerance = 1e-12;
    auto [f, rep] = solve_system(pp, g, b, Field::zeros(pp, g), cfg);
    double err = 0.0;
    for (double v : f.values[0]) err = std::max(err, std::fabs(v - 2.0));
    std::printf("  constant-data error: %.3e\n", err);
    ok = ok && rep.converged && err <= 1e-10;
  }
  {
    auto pp = ProblemParams::make(0.5, 2, 1.0, 1.0, 10.0);
    Grid g = build_grid(-1.0, 1.0, 1.0, 65, 33, 1.0, pp.a);
    BoundaryData b = BoundaryData::mirror_crossing(pp, g, 1.0);
    SolverConfig cfg;
    cfg.tolerance = 1e-10;
    auto [f, rep] = solve_system(pp, g, b, Field::zeros(pp, g), cfg);
    double asym = 0.0;
    for (int j = 0; j < g.ny(); ++j)
      for (int i = 0; i < g.nx(); ++i)
        asym = std::max(asym, std::fabs(f.at(1, i, j) -
                                        f.at(0, g.nx() - 1 - i, j)));
    std::printf("  mirror asymmetry: %.3e (tolerance %.0e, allowance 100x)\n",
                asym, cfg.tolerance);
    ok = ok && rep.converged && asym <= 100.0 * cfg.tolerance;
  }
  report(2, "exact constant solve to 1e-10; k=2 mirror symmetry", ok);
}

// ---------------------------------------------------------------------------
// 3. Spherical exponents: mu(1/2) = 1 +- 0.01; mu in [0.49, 1.01];
//    nu <= s + 0.01; gamma(lambda_2) = 1 +- 1e-3; under one minute.
void criterion3() {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  OptimConfig ocfg;
  for (double s : {0.25, 0.5, 0.75}) {
    auto mu = optimize_mu(s, 1024, ocfg);
    auto nu = optimize_nu(s, 1024, ocfg);
    std::printf("  s=%.2f: mu=%.4f nu=%.4f\n", s, mu.value, nu.value);
    if (s == 0.5) ok = ok && std::fabs(mu.value - 1.0) <= 0.01;
    ok = ok && mu.value >= 0.49 && mu.value <= 1.01;
    ok = ok && nu.value > 0.0 && nu.value <= s + 0.01;
  }
  for (double a : {-0.5, 0.0, 0.5}) {
    const double l2 = lambda2_halfsphere(a, 2048);
    const double gl2 = gamma_char(l2, (1.0 - a) / 2.0, 1);
    std::printf("  a=%+.1f: lambda2=%.6f gamma(lambda2)=%.6f\n", a, l2, gl2);
    ok = ok && std::fabs(gl2 - 1.0) <= 1e-3;
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  std::printf("  runtime: %.1f s\n", secs);
  ok = ok && secs < 60.0;
  report(3, "partition exponents mu, nu and gamma(lambda_2) cross-checks", ok);
}

// ---------------------------------------------------------------------------
// 4. Decay lemma on the 27-point (M, p, s) grid.  The s = 3/4 cells fail as
//    stated: the profile v = A (1 + M A^{p-1} z(y)) solves the hypotheses
//    exactly and violates the (1+delta)/M^{1/p} bound whenever 2s > 1.
void criterion4() {
  SolverConfig cfg;
  cfg.tolerance = 1e-10;
  cfg.max_sweeps = 400000;
  bool ok = true;
  int n_pass = 0, n_total = 0;
  for (double s : {0.25, 0.5, 0.75})
    for (double p : {0.5, 1.0, 2.0})
      for (double M : {10.0, 100.0, 1000.0}) {
        auto dc = run_decay_case(s, p, M, 0.0, 0.0, 281, 41, cfg,
                                 DecayClosure::Profile);
        auto bp = BarrierParams::make(1.0 - 2.0 * s, p, M, 0.0);
        auto res = decay_check(dc.field, dc.bdata, bp);
        std::printf("  s=%.2f p=%.1f M=%6.0f margin=%+.3e (%s)\n", s, p, M,
                    res.margin, res.ok ? "ok" : "VIOLATED");
        ok = ok && dc.report.converged && res.ok;
        n_pass += res.ok ? 1 : 0;
        ++n_total;
      }
  std::printf("  %d/%d cells with nonnegative margin\n", n_pass, n_total);
  report(4, "decay bound sup v <= (1+delta)/M^{1/p} on the (M,p,s) grid", ok);
}

// ---------------------------------------------------------------------------
// Shared sweep machinery for criteria 5-7.
struct SweepOutput {
  Field field;
  SweepRecord record;
};

SweepOutput run_sweep(double p, double q) {
  auto pp = ProblemParams::make(0.5, 2, p, q, 0.0);
  Grid g = build_grid(-1.0, 1.0, 1.0, 193, 49, 1.0, pp.a);
  BoundaryData b = BoundaryData::mirror_crossing(pp, g, 1.0);
  SolverConfig cfg;
  cfg.tolerance = 1e-8;
  cfg.max_sweeps = 200000;
  BetaLadder ladder{1.0, 10.0, 7};
  auto [f, rec] = continue_beta(pp, g, b, ladder, cfg);
  return {std::move(f), std::move(rec)};
}

int interface_node(const Field& f) {
  const Grid& g = f.grid;
  int best = 1;
  double bestv = 1e300;
  for (int i = 1; i < g.nx() - 1; ++i) {
    double mx = 0.0;
    for (int c = 0; c < f.params.k; ++c) mx = std::max(mx, f.values[c][i]);
    if (mx < bestv) {
      bestv = mx;
      best = i;
    }
  }
  return best;
}

void criterion5(const SweepOutput& lv) {
  const SweepRecord& rec = lv.record;
  const int n = rec.steps();
  bool ok = true;

  const double tp0 = rec.trace_product.front()[1];
  const double tpn = rec.trace_product.back()[1];
  std::printf("  trace product: first %.3e last %.3e ratio %.3e\n", tp0, tpn,
              tpn / tp0);
  ok = ok && tpn <= 1e-3 * tp0;

  const int q = std::max(1, n / 4);
  double first_q = 0.0, last_q = 0.0;
  for (int s = 0; s < q; ++s)
    first_q = std::max(first_q, rec.beta_overlap[s][1]);
  for (int s = n - q; s < n; ++s)
    last_q = std::max(last_q, rec.beta_overlap[s][1]);
  std::printf("  beta*overlap: first-quartile max %.3f last-quartile max %.3f\n",
              first_q, last_q);
  ok = ok && last_q <= 10.0 * first_q;

  const double r0 = rec.reflection_residual.front();
  const double rn = rec.reflection_residual.back();
  std::printf(
      "  reflection residual: beta=1 %.3e, beta=1e6 %.3e (need <= 10%%)\n", r0,
      rn);
  std::printf(
      "  note: for p=q the competition cancels in the discrete reflection\n"
      "  identity, so both values are solver-defect noise (<= 2*tolerance);\n"
      "  the 10%% decrease compares noise against noise.\n");
  ok = ok && rn <= 0.1 * r0;

  report(5, "segregation sweep: trace product, bounded beta*overlap, "
            "reflection residual decrease", ok);
}

void criterion6(const SweepOutput& lv, const SweepOutput& gp) {
  bool ok = true;
  double alpha_lv = 0.0, alpha_gp = 0.0;
  {
    const Grid& g = lv.field.grid;
    const double dx = g.dx();
    const std::vector<double> radii{4 * dx, 8 * dx, 16 * dx, 32 * dx};
    const int x0 = interface_node(lv.field);
    alpha_lv = fit_local_exponent(g.x_nodes, lv.field.trace(0), x0, radii);
    std::printf("  LV interface x0=%.4f alpha=%.3f (expect [0.85, 1.1])\n",
                g.x_nodes[x0], alpha_lv);
  }
  {
    const Grid& g = gp.field.grid;
    const double dx = g.dx();
    const std::vector<double> radii{4 * dx, 8 * dx, 16 * dx, 32 * dx};
    const int x0 = interface_node(gp.field);
    alpha_gp = fit_local_exponent(g.x_nodes, gp.field.trace(0), x0, radii);
    std::printf("  GP interface x0=%.4f alpha=%.3f (expect [0.4, 0.6])\n",
                g.x_nodes[x0], alpha_gp);
  }
  ok = alpha_lv >= 0.85 && alpha_lv <= 1.1 && alpha_gp >= 0.4 &&
       alpha_gp <= 0.6;
  report(6, "free-boundary exponent contrast alpha_LV vs alpha_GP", ok);
}

void criterion7(const SweepOutput& lv) {
  bool ok = true;

  // (a) ACF profile on the hat parts of the final LV field.
  {
    const Grid& g = lv.field.grid;
    auto hf = hat_field(lv.field);
    std::vector<double> zp(hf.values[0].size()), zn(zp.size());
    for (size_t n = 0; n < zp.size(); ++n) {
      zp[n] = std::max(hf.values[0][n], 0.0);
      zn[n] = std::max(-hf.values[0][n], 0.0);
    }
    const std::vector<double> radii{0.05, 0.07, 0.1, 0.14, 0.2, 0.28, 0.4};
    const int x0 = interface_node(lv.field);
    auto prof = acf_quotient(g, zp, zn, g.x_nodes[x0], 1.0, radii);
    double worst = 1.0;
    for (size_t m = 1; m < prof.values.size(); ++m)
      worst = std::min(worst, prof.values[m] / prof.values[m - 1]);
    std::printf("  ACF(v_hat+, v_hat-): worst successive ratio %.4f "
                "(allow >= 0.98)\n", worst);
    ok = ok && worst >= 0.98;
  }

  // (b) Analytic pair (x+, x-): constant profile at the oracle value
  //     pi^2/16 (brute-force quadrature pinned in the unit tests).
  {
    Grid g = build_grid(-1.0, 1.0, 1.0, 257, 129, 1.0, 0.0);
    std::vector<double> zp(size_t(g.nx()) * g.ny()), zn(zp.size());
    for (int j = 0; j < g.ny(); ++j)
      for (int i = 0; i < g.nx(); ++i) {
        zp[g.index(i, j)] = std::max(g.x_nodes[i], 0.0);
        zn[g.index(i, j)] = std::max(-g.x_nodes[i], 0.0);
      }
    const std::vector<double> radii{0.25, 0.4, 0.55, 0.7};
    auto prof = acf_quotient(g, zp, zn, 0.0, 1.0, radii);
    const double oracle = kPi * kPi / 16.0;
    double worst_dev = 0.0, mx = 0.0, mn = 1e300;
    for (double v : prof.values) {
      worst_dev = std::max(worst_dev, std::fabs(v - oracle) / oracle);
      mx = std::max(mx, v);
      mn = std::min(mn, v);
    }
    std::printf("  ACF(x+, x-): max deviation from pi^2/16 %.3f%%, spread "
                "%.3f%%\n", 100 * worst_dev, 100 * (mx / mn - 1.0));
    ok = ok && worst_dev <= 0.03 && mx / mn <= 1.02;
  }

  // (c) H'(r) = 2E(r)/r to first order in h on converged solutions.
  {
    double worst[2];
    int idx = 0;
    for (int scale : {1, 2}) {
      auto pp = ProblemParams::make(0.5, 2, 1.0, 1.0, 1000.0);
      Grid g = build_grid(-1.0, 1.0, 1.0, 96 * scale + 1, 24 * scale + 1, 1.0,
                          pp.a);
      BoundaryData b = BoundaryData::mirror_crossing(pp, g, 1.0);
      SolverConfig cfg;
      cfg.tolerance = 1e-9;
      cfg.max_sweeps = 400000;
      auto [f, rep] = solve_system(pp, g, b, Field::zeros(pp, g), cfg);
      std::vector<double> radii;
      for (int m = 0; m <= 12; ++m) radii.push_back(0.08 + 0.3 * m / 12.0);
      auto res = almgren_EH(f, 0, 0.25, radii);
      double w = 0.0;
      for (size_t m = 1; m + 1 < radii.size(); ++m)
        w = std::max(w, res.identity_residual[m]);
      worst[idx++] = w;
      ok = ok && rep.converged;
    }
    const double order = std::log2(worst[0] / worst[1]);
    std::printf("  |H' - 2E/r|: %.3e -> %.3e under refinement, order %.2f "
                "(need >= 0.8)\n", worst[0], worst[1], order);
    ok = ok && order >= 0.8;
  }

  report(7, "ACF monotonicity, pinned analytic ACF constant, H' = 2E/r", ok);
}

// ---------------------------------------------------------------------------
// 8. Determinism and persistence.
void criterion8() {
  namespace fs = std::filesystem;
  bool ok = true;
  RunConfig cfg;
  cfg.params = ProblemParams::make(0.5, 2, 1.0, 1.0, 0.0);
  cfg.nx = 49;
  cfg.ny = 17;
  cfg.preset = BoundaryPreset::MirrorCrossing;
  cfg.solver.tolerance = 1e-8;
  cfg.ladder = {1.0, 100.0, 3};
  cfg.diagnostics = {"reflection", "segregation", "free_boundary"};

  const fs::path base = fs::temp_directory_path() / "fraclap_acceptance8";
  fs::remove_all(base);
  run_scenario(Scenario::SweepBeta, cfg, (base / "a").string(), 0);
  run_scenario(Scenario::SweepBeta, cfg, (base / "b").string(), 2);
  for (const char* name : {"sweep.csv", "field.txt", "scalars.csv"}) {
    const bool same = read_file((base / "a" / name).string()) ==
                      read_file((base / "b" / name).string());
    std::printf("  %s identical: %s\n", name, same ? "yes" : "NO");
    ok = ok && same;
  }

  Field f = load_field((base / "a" / "field.txt").string());
  save_field(f, (base / "a" / "field2.txt").string());
  const bool bitwise = read_file((base / "a" / "field.txt").string()) ==
                       read_file((base / "a" / "field2.txt").string());
  std::printf("  field round-trip bitwise: %s\n", bitwise ? "yes" : "NO");
  ok = ok && bitwise;
  report(8, "byte-identical reruns and bitwise field persistence", ok);
}

}  // namespace

int main() {
  std::printf("fraclap acceptance suite\n");
  criterion1();
  criterion2();
  criterion3();
  criterion4();

  std::printf("  running LV and GP beta sweeps (193x49, beta 1 -> 1e6)...\n");
  std::fflush(stdout);
  SweepOutput lv = run_sweep(1.0, 1.0);
  SweepOutput gp = run_sweep(1.0, 2.0);
  criterion5(lv);
  criterion6(lv, gp);
  criterion7(lv);
  criterion8();

  std::printf("%d criterion(s) failed\n", g_failures);
  return g_failures;
}
