#include "fraclap/quadrature.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace fraclap {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Continued fraction for the incomplete beta function (Lentz's method).
double betacf(double a, double b, double x) {
  constexpr int kMaxIter = 300;
  constexpr double kEps = 1e-16;
  constexpr double kFpMin = 1e-300;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kFpMin) d = kFpMin;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) return h;
  }
  throw std::runtime_error("incomplete_beta_reg: continued fraction stalled");
}

}  // namespace

double log_beta(double a, double b) {
  return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

double incomplete_beta_reg(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0))
    throw std::invalid_argument("incomplete_beta_reg: need a,b > 0");
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double bt =
      std::exp(-log_beta(a, b) + a * std::log(x) + b * std::log1p(-x));
  if (x < (a + 1.0) / (a + b + 2.0)) return bt * betacf(a, b, x) / a;
  return 1.0 - bt * betacf(b, a, 1.0 - x) / b;
}

namespace {

// Primitive G(t) = int_0^t sin^q, t in [0, pi].
double sin_pow_primitive(double q, double t) {
  const double p1 = (q + 1.0) / 2.0;
  const double full = std::exp(log_beta(p1, 0.5));  // int over [0,pi]
  if (t <= 0.0) return 0.0;
  if (t >= kPi) return full;
  if (t <= kPi / 2.0) {
    const double st = std::sin(t);
    return 0.5 * full * incomplete_beta_reg(p1, 0.5, st * st);
  }
  const double st = std::sin(kPi - t);
  return full - 0.5 * full * incomplete_beta_reg(p1, 0.5, st * st);
}

}  // namespace

double sin_pow_integral(double q, double t0, double t1) {
  if (!(q > -1.0))
    throw std::invalid_argument("sin_pow_integral: need q > -1");
  if (t0 < -1e-12 || t1 > kPi + 1e-12 || t0 > t1)
    throw std::invalid_argument("sin_pow_integral: bad interval");
  t0 = std::max(t0, 0.0);
  t1 = std::min(t1, kPi);
  return sin_pow_primitive(q, t1) - sin_pow_primitive(q, t0);
}

double sin_pow_total(double q) { return sin_pow_integral(q, 0.0, kPi); }

namespace {

double simpson(const std::function<double(double)>& f, double a, double fa,
               double b, double fb, double m, double fm) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_step(const std::function<double(double)>& f, double a,
                     double fa, double b, double fb, double m, double fm,
                     double whole, double tol, int depth, bool& ok) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson(f, a, fa, m, fm, lm, flm);
  const double right = simpson(f, m, fm, b, fb, rm, frm);
  const double err = left + right - whole;
  if (std::fabs(err) <= 15.0 * tol) return left + right + err / 15.0;
  if (depth <= 0) {
    ok = false;
    return left + right;
  }
  return adaptive_step(f, a, fa, m, fm, lm, flm, left, tol / 2, depth - 1,
                       ok) +
         adaptive_step(f, m, fm, b, fb, rm, frm, right, tol / 2, depth - 1,
                       ok);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol, int max_depth) {
  if (a == b) return 0.0;
  const double fa = f(a), fb = f(b), m = 0.5 * (a + b), fm = f(m);
  const double whole = simpson(f, a, fa, b, fb, m, fm);
  bool ok = true;
  const double v =
      adaptive_step(f, a, fa, b, fb, m, fm, whole, tol, max_depth, ok);
  if (!ok)
    throw std::runtime_error(
        "adaptive_simpson: depth limit reached before tolerance " +
        std::to_string(tol));
  return v;
}

}  // namespace fraclap
