#include "fraclap/continuation.hpp"

#include <cmath>
#include <limits>

#include "fraclap/diagnostics.hpp"

namespace fraclap {

double BetaLadder::beta_at(int step) const {
  return beta0 * std::pow(ratio, step);
}

void BetaLadder::validate() const {
  if (!(beta0 > 0.0) || !(ratio > 1.0) || steps < 1)
    throw std::invalid_argument("BetaLadder: need beta0 > 0, ratio > 1, steps >= 1");
}

SolverStepError::SolverStepError(int step_, const SolveReport& report_)
    : std::runtime_error("solver did not converge at ladder step " +
                         std::to_string(step_) + " (residual " +
                         std::to_string(report_.final_residual) + ")"),
      step(step_),
      report(report_) {}

namespace {

// Trapezoid integral of a nodal function over the trace.
double trace_integral(const Grid& grid, const std::vector<double>& f) {
  const int nx = grid.nx();
  double sum = 0.0;
  for (int i = 0; i + 1 < nx; ++i)
    sum += 0.5 * (f[i] + f[i + 1]) * (grid.x_nodes[i + 1] - grid.x_nodes[i]);
  return sum;
}

void record_step(SweepRecord& rec, const Field& field, double beta,
                 const SolveReport& rep) {
  const ProblemParams& pp = field.params;
  const Grid& grid = field.grid;
  const int k = pp.k, nx = grid.nx();
  rec.beta.push_back(beta);
  rec.iterations.push_back(rep.iterations);
  rec.final_residual.push_back(rep.final_residual);
  rec.converged.push_back(rep.converged ? 1 : 0);
  rec.wall_time.push_back(rep.wall_time);

  std::vector<std::vector<double>> traces(k);
  for (int c = 0; c < k; ++c) traces[c] = field.trace(c);

  std::vector<double> overlap(size_t(k) * k, 0.0);
  std::vector<double> product(size_t(k) * k, 0.0);
  std::vector<double> integrand(nx);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      if (i == j) continue;
      for (int n = 0; n < nx; ++n)
        integrand[n] = std::pow(traces[i][n], pp.p) *
                       std::pow(traces[j][n], pp.q);
      overlap[i * k + j] = trace_integral(grid, integrand);
      for (int n = 0; n < nx; ++n) integrand[n] = traces[i][n] * traces[j][n];
      product[i * k + j] = trace_integral(grid, integrand);
    }
  }
  std::vector<double> beta_overlap(overlap);
  for (auto& v : beta_overlap) v *= beta;
  rec.overlap.push_back(std::move(overlap));
  rec.beta_overlap.push_back(std::move(beta_overlap));
  rec.trace_product.push_back(std::move(product));
  rec.reflection_residual.push_back(
      k == 2 ? reflection_residual(field)
             : std::numeric_limits<double>::quiet_NaN());
}

}  // namespace

std::pair<Field, SweepRecord> continue_beta(const ProblemParams& params,
                                            const Grid& grid,
                                            const BoundaryData& bdata,
                                            const BetaLadder& ladder,
                                            const SolverConfig& cfg) {
  params.validate();
  ladder.validate();

  SweepRecord rec;
  rec.k = params.k;

  // Harmonic warm start: the same data at beta = 0.
  ProblemParams warm_params = params;
  warm_params.beta = 0.0;
  Field state = Field::zeros(params, grid);
  {
    auto [f, rep] = solve_system(warm_params, grid, bdata, state, cfg);
    state = std::move(f);
    if (!rep.converged) throw SolverStepError(-1, rep);
  }

  for (int step = 0; step < ladder.steps; ++step) {
    ProblemParams step_params = params;
    step_params.beta = ladder.beta_at(step);
    auto [f, rep] = solve_system(step_params, grid, bdata, state, cfg);
    state = std::move(f);
    if (!rep.converged) throw SolverStepError(step, rep);
    record_step(rec, state, step_params.beta, rep);
  }
  return {std::move(state), std::move(rec)};
}

bool segregation_reached(const SweepRecord& record, double eps) {
  if (record.steps() == 0)
    throw std::invalid_argument("segregation_reached: empty record");
  const auto& prod = record.trace_product.back();
  const int k = record.k;
  double worst = 0.0;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      if (i != j) worst = std::max(worst, prod[i * k + j]);
  return worst <= eps;
}

double default_segregation_eps(const Grid& grid, double sup_bound) {
  return 1e-3 * (grid.x_hi() - grid.x_lo()) * sup_bound * sup_bound;
}

}  // namespace fraclap
