// Every functional used to characterize solutions: Holder and Morrey
// quotients, the Alt-Caffarelli-Friedman product, Almgren-type E/H with the
// H' = 2E/r companion check, the reflected differences v_hat, reflection and
// segregation residuals, free-boundary extraction and local exponent fits.
#pragma once

#include <vector>

#include "fraclap/field.hpp"

namespace fraclap {

struct RadialProfile {
  double center_x = 0.0;
  std::vector<double> radii;
  std::vector<double> values;
};

struct HatField {
  // v_hat_i = v_i - sum_{j != i} (a_ij/a_ji) v_j on the grid.
  std::vector<std::vector<double>> values;
};

struct Box {
  double x_lo, x_hi, y_lo, y_hi;
};

// Sup over sampled node pairs of |v(X')-v(X'')| / |X'-X''|^alpha.  Sampling:
// a decimated lattice (all pairs) plus every adjacent pair; `all_pairs`
// switches to the full O(n^2) enumeration.
double holder_quotient(const Field& field, int i, double alpha, const Box& sub,
                       bool all_pairs = false);

// Morrey quotient r^{-(N+1-2eps)} int_{B_r(x0,0) cap {y>0}} sum_i |grad v_i|^2
// (unweighted; heuristic for s != 1/2).
RadialProfile morrey_quotient(const Field& field, double center_x,
                              const std::vector<double>& radii, double eps);

// ACF product: prod_i r^{-2mu} int_{B_r^+} y^a |grad z_i|^2 |X-X0|^{2s-N-...}
// with kernel exponent N-2s = a for N=1.  Requires z1*z2 = 0 on the trace
// (within a tolerance scaled by the data) and z_i(center) = 0.
RadialProfile acf_quotient(const Grid& grid, const std::vector<double>& z1,
                           const std::vector<double>& z2, double center_x,
                           double mu, const std::vector<double>& radii);

struct AlmgrenResult {
  RadialProfile E, H;
  // |H'(r) - 2E(r)/r| by centered differences (one-sided at the ends).
  std::vector<double> identity_residual;
};

AlmgrenResult almgren_EH(const Field& field, int i, double center_x,
                         const std::vector<double>& radii);

HatField hat_field(const Field& field);

// k=2 only: sup over Steklov bottom nodes of
// |conormal(a21 v1 - a12 v2) - (a21 f1 - a12 f2)|.
double reflection_residual(const Field& field);

struct SegregationResiduals {
  // Worst violation per component of, in order:
  //   conormal v_i <= f_i,
  //   conormal v_hat_i >= f_hat_i,
  //   |v_i * (conormal v_hat_i - f_hat_i)| = 0.
  std::vector<double> upper, lower, complementarity;
};

SegregationResiduals segregation_system_residual(const Field& field);

// Least-squares slope of log osc([x0-r,x0+r]) against log r.  Throws if
// fewer than 3 radii give a usable (positive) oscillation.
double fit_local_exponent(const std::vector<double>& x_nodes,
                          const std::vector<double>& trace, int x0_index,
                          const std::vector<double>& radii);

// Bottom nodes where every component trace is < threshold.
std::vector<int> free_boundary(const Field& field, double threshold);

// Number of components exceeding threshold somewhere within |x - x0| <= r.
int multiplicity(const Field& field, int x0_index, double threshold, double r);

// Default free-boundary threshold: 10 * sqrt(solver tolerance).
double default_fb_threshold(double solver_tolerance);

}  // namespace fraclap
