// Scalar quadrature helpers shared by the grid weights, the hemisphere
// eigensolver and the barrier constructions.  Everything here reduces to
// integrals of sin(theta)^q, handled exactly through the regularized
// incomplete beta function.
#pragma once

#include <functional>

namespace fraclap {

// log of the complete Euler beta function B(a,b).
double log_beta(double a, double b);

// Regularized incomplete beta I_x(a,b) for a,b > 0 and x in [0,1],
// evaluated with the Lentz continued fraction.
double incomplete_beta_reg(double a, double b, double x);

// Exact integral of sin(theta)^q over [t0,t1] subset of [0,pi], q > -1.
// Integrable endpoint singularities (q < 0) are fine.
double sin_pow_integral(double q, double t0, double t1);

// Integral of sin(theta)^q over the full [0,pi].
double sin_pow_total(double q);

// Adaptive Simpson with absolute tolerance.  Throws QuadratureError when the
// recursion depth limit is hit before the tolerance is met.
struct QuadratureError;
double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol, int max_depth = 48);

}  // namespace fraclap
