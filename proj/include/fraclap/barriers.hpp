// Explicit supersolution constructions for the decay estimate: the profile
// f(x) = c int_{-inf}^x (1+t^2)^{-b/2} dt with b = 1+(1-a)/p, the shifted sum
// g_M, the kernel extension w_delta, and the end-to-end decay check on
// computed solutions.
#pragma once

#include <functional>
#include <string>

#include "fraclap/solver.hpp"

namespace fraclap {

struct BarrierParams {
  double a = 0.0;      // in (-1,1)
  double p = 1.0;      // > 0
  double b = 3.0;      // derived, 1 + (1-a)/p
  double M = 1.0;      // > 0
  double delta = 0.0;  // >= 0
  double c = 0.0;      // 1 / int_R (1+t^2)^{-b/2} dt, so f(+inf) = 1

  double s() const { return (1.0 - a) / 2.0; }
  static BarrierParams make(double a, double p, double M, double delta);
};

// f(x) = c int_{-inf}^x (1+t^2)^{-b/2} dt, strictly increasing, 0 -> 1.
double barrier_f(double x, const BarrierParams& bp);

// g_M(x) = f_M(x-1) + f_M(-x-1) with f_M(x) = f(M^{1/(2s)} x).
double barrier_gM(double x, const BarrierParams& bp);

// Mass-1 kernel extension of a bounded trace function g:
// (x,y) -> int K_a(u) g(x - y u) du with K_a(u) ~ (1+u^2)^{-(2-a)/2},
// normalized so constants extend to themselves.  g_limit is the common value
// of g at +-infinity, used to split off the tail exactly.
double poisson_extension(const std::function<double(double)>& g,
                         double g_limit, double x, double y, double a,
                         double tol = 1e-9);

// w_delta(x,y) = delta M^{-1/p} + kernel extension of g_M.
double supersolution_wdelta(double x, double y, const BarrierParams& bp,
                            double tol = 1e-9);

struct DecayCase {
  Field field;
  BoundaryData bdata;
  SolveReport report;
};

// Lateral Dirichlet closure of the decay runs: unit data everywhere, or the
// x-independent profile A + (M A^p - h) z(y) (which isolates the decay
// inequality from the artificial-box closure).
enum class DecayClosure { Const, Profile };

// Solve L_a v = 0 on [-3.5,3.5]x[0,1] with boundary term -M v^p + h
// (|h| <= delta) on the trace, realized through a frozen unit partner
// component; Dirichlet data 1 on top, closure as selected on the laterals.
DecayCase run_decay_case(double s, double p, double M, double delta, double h,
                         int nx, int ny, const SolverConfig& cfg,
                         DecayClosure closure = DecayClosure::Const);

struct DecayResult {
  bool ok = false;
  double lhs = 0.0;     // sup of the trace over |x| <= 1/2
  double rhs = 0.0;     // (1+delta) M^{-1/p} * sup of v on the unit arc
  double margin = 0.0;  // rhs - lhs
};

// Checks sup_{|x|<=1/2} v(x,0) <= (1+delta)/M^{1/p} * sup_{unit arc} v on a
// field produced by run_decay_case.  Throws on a mismatched boundary tag.
DecayResult decay_check(const Field& field, const BoundaryData& bdata,
                        const BarrierParams& bp);

}  // namespace fraclap
