// Weighted hemisphere eigenvalues for N=1: Sturm-Liouville problems
// -((sin t)^a u')' = lambda (sin t)^a u on arcs of the half-circle, the
// characteristic function gamma(t), and the two-arc partition exponents
// nu(s,1) and mu(s,1).
#pragma once

#include <utility>
#include <vector>

namespace fraclap {

struct ArcSpec {
  double theta_lo = 0.0;
  double theta_hi = 3.141592653589793;
  // Endpoint conditions are derived: NATURAL at an equator endpoint (0 or
  // pi), DIRICHLET otherwise.  The force flags override to Dirichlet.
  bool force_dirichlet_lo = false;
  bool force_dirichlet_hi = false;

  bool natural_lo() const;
  bool natural_hi() const;
};

struct ExponentResult {
  double value = 0.0;
  // Every optimizer evaluation: (parameters..., objective).
  std::vector<std::pair<std::vector<double>, double>> trace;
  int grid_resolution = 0;
};

struct OptimConfig {
  double theta_tol = 1e-4;
  int coarse_points = 24;  // per axis, nu grid search
};

// gamma(t) = sqrt(((N-2s)/2)^2 + t) - (N-2s)/2; throws for t < 0.
double gamma_char(double t, double s, int N);

// Smallest eigenvalue of the weighted Rayleigh quotient on the arc,
// conservative three-point scheme with exact (sin t)^a face means,
// generalized eigenproblem solved by shifted inverse iteration.
double arc_eigenvalue(const ArcSpec& arc, double a, int resolution);

// Second eigenvalue of the full half-circle with natural ends; converges to
// 1 + a so that gamma(lambda_2) = 1.
double lambda2_halfsphere(double a, int resolution);

// mu(s,1): minimize [gamma(l1(0,t)) + gamma(l1(t,pi))]/2 over the split
// t in (0,pi) by golden-section search.
ExponentResult optimize_mu(double s, int resolution, const OptimConfig& cfg);

// nu(s,1): minimize over (t1,t2), arcs (0,t1) and (t2,pi) that may overlap in
// the interior but not share an equator point; grid search refined by
// coordinate descent.
ExponentResult optimize_nu(double s, int resolution, const OptimConfig& cfg);

}  // namespace fraclap
