// Geometric beta ladder with warm starts, approximating the strong
// competition limit.  Each step records the overlap integrals that the
// segregation diagnostics consume.
#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "fraclap/solver.hpp"

namespace fraclap {

struct BetaLadder {
  double beta0 = 1.0;
  double ratio = 10.0;
  int steps = 7;

  double beta_at(int step) const;
  void validate() const;
};

struct SweepRecord {
  int k = 0;
  std::vector<double> beta;
  std::vector<long> iterations;
  std::vector<double> final_residual;
  std::vector<char> converged;
  std::vector<double> wall_time;  // seconds, manifest-only
  // Per step, k*k row-major matrices.
  std::vector<std::vector<double>> overlap;        // O_ij = int u_i^p u_j^q dx
  std::vector<std::vector<double>> beta_overlap;   // beta * O_ij
  std::vector<std::vector<double>> trace_product;  // int u_i u_j dx
  // Sup-norm reflection-law residual, k=2 only (NaN otherwise).
  std::vector<double> reflection_residual;

  int steps() const { return static_cast<int>(beta.size()); }
};

struct SolverStepError : std::runtime_error {
  int step;
  SolveReport report;
  SolverStepError(int step, const SolveReport& report);
};

// Runs the ladder.  The first step is warm-started from a beta=0 solve of the
// same data; subsequent steps reuse the previous solution.  Solver failure at
// any step raises SolverStepError carrying the step index.
std::pair<Field, SweepRecord> continue_beta(const ProblemParams& params,
                                            const Grid& grid,
                                            const BoundaryData& bdata,
                                            const BetaLadder& ladder,
                                            const SolverConfig& cfg);

// True iff max_{i != j} int u_i u_j dx <= eps at the final recorded step.
bool segregation_reached(const SweepRecord& record, double eps);

// Default eps, dimensionally consistent with int u_i u_j:
// 1e-3 * width * sup_bound^2.
double default_segregation_eps(const Grid& grid, double sup_bound);

}  // namespace fraclap
