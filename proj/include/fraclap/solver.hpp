// Finite-volume discretization of L_a v_i = 0 on the half-rectangle with the
// nonlinear Steklov condition on y=0 and Dirichlet data on top and lateral
// boundaries, solved by damped nonlinear Gauss-Seidel.  Bottom rows enforce
// the conormal condition
//     -(v_{i,1}-v_{i,0})/(z_1-z_0) = f_i - beta v_i^p sum a_ij v_j^q
// whose scalar map in v_{i,0} is strictly increasing, so each local solve has
// a unique nonnegative root (safeguarded Newton with bisection fallback).
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "fraclap/field.hpp"

namespace fraclap {

struct BoundaryData {
  // Per component: top[c] has nx samples (row j=ny-1), left[c]/right[c] have
  // ny samples (columns i=0 and i=nx-1; the top corners defer to `top`).
  std::vector<std::vector<double>> top, left, right;
  // Components marked frozen are held at their initial values everywhere and
  // excluded from the defect measure; they act as data for the others.
  std::vector<bool> frozen;
  std::string tag;  // provenance of the Dirichlet closure

  static BoundaryData constant(const ProblemParams& params, const Grid& grid,
                               double c);
  // k=2 crossing data g_1(x)= amp*(1+x')/2, g_2(x,y)=g_1(-x,y) with x'
  // the coordinate rescaled to [-1,1] over the grid width.
  static BoundaryData mirror_crossing(const ProblemParams& params,
                                      const Grid& grid, double amp);
  void validate(const ProblemParams& params, const Grid& grid) const;
};

enum class SweepOrder { RedBlack, Lexicographic };

struct SolverConfig {
  double tolerance = 1e-8;  // sup-norm defect
  long max_sweeps = 100000;
  double damping = 1.0;  // in (0,1]
  SweepOrder sweep_order = SweepOrder::RedBlack;
  int threads = 0;  // 0 = auto (red-black sweeps only)
};

struct SolveReport {
  long iterations = 0;
  double final_residual = 0.0;
  bool converged = false;
  double wall_time = 0.0;  // seconds
};

// Non-convergence is reported through SolveReport; NaN in an iterate is a
// hard error.
struct SolverError : std::runtime_error {
  explicit SolverError(const std::string& msg) : std::runtime_error(msg) {}
};

// Finite-volume residual of div(y^a grad v_i) at interior nodes, per unit
// cell area; zero on boundary rows/columns.
std::vector<double> interior_defect(const Field& field, int i);

// Residual of the Steklov condition at the bottom nodes:
// discrete conormal - f_i + competition.  Corner entries (Dirichlet) are 0.
std::vector<double> boundary_defect(const Field& field, int i);

// Discrete conormal derivative -(v_{i,1}-v_{i,0})/(z_1-z_0) at every bottom
// node.
std::vector<double> conormal_trace(const Field& field, int i);

std::pair<Field, SolveReport> solve_system(const ProblemParams& params,
                                           const Grid& grid,
                                           const BoundaryData& bdata,
                                           const Field& init,
                                           const SolverConfig& cfg);

}  // namespace fraclap
