#include "fraclap/exponents.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fraclap/quadrature.hpp"

namespace fraclap {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kEquatorTol = 1e-12;

// Symmetric generalized tridiagonal eigenproblem A u = lambda B u with B
// diagonal, assembled from the conservative scheme on [lo,hi]:
//   A off-diag -W_{l+1/2}/h, diag sums; B_ll = int of (sin t)^a over the
//   control interval.  Natural ends keep the boundary node with a half cell;
//   Dirichlet ends drop it.
struct ArcSystem {
  int n = 0;  // unknowns
  double h = 0.0;
  std::vector<double> diag, off;  // A
  std::vector<double> mass;       // B diagonal
};

ArcSystem assemble(const ArcSpec& arc, double a, int resolution) {
  if (!(arc.theta_hi > arc.theta_lo))
    throw std::invalid_argument("arc_eigenvalue: degenerate arc");
  if (arc.theta_lo < -kEquatorTol || arc.theta_hi > kPi + kEquatorTol)
    throw std::invalid_argument("arc_eigenvalue: arc outside [0,pi]");
  if (resolution < 8)
    throw std::invalid_argument("arc_eigenvalue: resolution too small");

  const int m = resolution;  // intervals
  const double lo = std::max(arc.theta_lo, 0.0);
  const double hi = std::min(arc.theta_hi, kPi);
  const double h = (hi - lo) / m;
  auto node = [&](int l) { return lo + h * l; };

  // Face transmissibilities: harmonic integral means of (sin t)^a, exact on
  // constant-flux profiles.  Arithmetic means lose the second order at
  // Dirichlet equator endpoints, where eigenfunctions behave like
  // (pi - t)^{1-a}.
  std::vector<double> face(m);  // W_{l+1/2} over [node l, node l+1]
  for (int l = 0; l < m; ++l)
    face[l] = h / sin_pow_integral(-a, node(l), node(l + 1));

  const bool keep_lo = arc.natural_lo();
  const bool keep_hi = arc.natural_hi();
  const int first = keep_lo ? 0 : 1;
  const int last = keep_hi ? m : m - 1;  // node indices
  const int n = last - first + 1;
  if (n < 3) throw std::invalid_argument("arc_eigenvalue: arc too small");

  ArcSystem sys;
  sys.n = n;
  sys.h = h;
  sys.diag.assign(n, 0.0);
  sys.off.assign(n - 1, 0.0);
  sys.mass.assign(n, 0.0);
  for (int idx = 0; idx < n; ++idx) {
    const int l = first + idx;
    const double wl = (l > 0) ? face[l - 1] : 0.0;    // absent at natural lo
    const double wr = (l < m) ? face[l] : 0.0;        // absent at natural hi
    sys.diag[idx] = (wl + wr) / h;
    if (idx + 1 < n) sys.off[idx] = -face[l] / h;
    const double c_lo = (l == 0) ? node(0) : node(l) - 0.5 * h;
    const double c_hi = (l == m) ? node(m) : node(l) + 0.5 * h;
    sys.mass[idx] = sin_pow_integral(a, c_lo, c_hi);
  }
  return sys;
}

// Thomas solve of (A + shift B) x = rhs.
void shifted_solve(const ArcSystem& sys, double shift,
                   const std::vector<double>& rhs, std::vector<double>& x,
                   std::vector<double>& cw, std::vector<double>& dw) {
  const int n = sys.n;
  cw.resize(n);
  dw.resize(n);
  double b0 = sys.diag[0] + shift * sys.mass[0];
  cw[0] = (n > 1) ? sys.off[0] / b0 : 0.0;
  dw[0] = rhs[0] / b0;
  for (int i = 1; i < n; ++i) {
    const double m = sys.diag[i] + shift * sys.mass[i] -
                     sys.off[i - 1] * cw[i - 1];
    if (i + 1 < n) cw[i] = sys.off[i] / m;
    dw[i] = (rhs[i] - sys.off[i - 1] * dw[i - 1]) / m;
  }
  x.resize(n);
  x[n - 1] = dw[n - 1];
  for (int i = n - 2; i >= 0; --i) x[i] = dw[i] - cw[i] * x[i + 1];
}

double rayleigh(const ArcSystem& sys, const std::vector<double>& x) {
  const int n = sys.n;
  double xa = 0.0, xb = 0.0;
  for (int i = 0; i < n; ++i) {
    double av = sys.diag[i] * x[i];
    if (i > 0) av += sys.off[i - 1] * x[i - 1];
    if (i + 1 < n) av += sys.off[i] * x[i + 1];
    xa += x[i] * av;
    xb += x[i] * sys.mass[i] * x[i];
  }
  return xa / xb;
}

void b_normalize(const ArcSystem& sys, std::vector<double>& x) {
  double nb = 0.0;
  for (int i = 0; i < sys.n; ++i) nb += sys.mass[i] * x[i] * x[i];
  nb = std::sqrt(nb);
  for (auto& v : x) v /= nb;
}

// Inverse iteration on (A + 0.5 B)^{-1} B, optionally B-orthogonal to a
// deflation vector; converges to the smallest eigenvalue outside the
// deflated space.
double inverse_iterate(const ArcSystem& sys, std::vector<double> x,
                       const std::vector<double>* deflate) {
  std::vector<double> cw, dw, rhs(sys.n);
  auto project = [&](std::vector<double>& v) {
    if (!deflate) return;
    double num = 0.0, den = 0.0;
    for (int i = 0; i < sys.n; ++i) {
      num += sys.mass[i] * v[i] * (*deflate)[i];
      den += sys.mass[i] * (*deflate)[i] * (*deflate)[i];
    }
    const double c = num / den;
    for (int i = 0; i < sys.n; ++i) v[i] -= c * (*deflate)[i];
  };

  project(x);
  b_normalize(sys, x);
  double lambda = rayleigh(sys, x);
  for (int it = 0; it < 400; ++it) {
    for (int i = 0; i < sys.n; ++i) rhs[i] = sys.mass[i] * x[i];
    std::vector<double> xn;
    shifted_solve(sys, 0.5, rhs, xn, cw, dw);
    project(xn);
    b_normalize(sys, xn);
    const double ln = rayleigh(sys, xn);
    x.swap(xn);
    if (std::fabs(ln - lambda) <= 1e-14 * (1.0 + std::fabs(ln))) {
      return ln;
    }
    lambda = ln;
  }
  return lambda;
}

}  // namespace

bool ArcSpec::natural_lo() const {
  return !force_dirichlet_lo && theta_lo <= kEquatorTol;
}
bool ArcSpec::natural_hi() const {
  return !force_dirichlet_hi && theta_hi >= kPi - kEquatorTol;
}

double gamma_char(double t, double s, int N) {
  if (t < 0.0) throw std::invalid_argument("gamma_char: t must be >= 0");
  const double d = (N - 2.0 * s) / 2.0;
  return std::sqrt(d * d + t) - d;
}

double arc_eigenvalue(const ArcSpec& arc, double a, int resolution) {
  if (resolution < 64)
    throw std::invalid_argument("arc_eigenvalue: resolution >= 64 required");
  const ArcSystem sys = assemble(arc, a, resolution);
  std::vector<double> x(sys.n, 1.0);
  return inverse_iterate(sys, std::move(x), nullptr);
}

double lambda2_halfsphere(double a, int resolution) {
  ArcSpec full;  // (0, pi), natural at both ends
  const ArcSystem sys = assemble(full, a, resolution);
  // The constant is the exact first eigenvector of the conservative scheme.
  std::vector<double> ones(sys.n, 1.0);
  std::vector<double> x(sys.n);
  for (int i = 0; i < sys.n; ++i)
    x[i] = std::cos(kPi * i / double(sys.n - 1));
  return inverse_iterate(sys, std::move(x), &ones);
}

namespace {

double mu_objective(double theta, double s, double a, int resolution,
                    ExponentResult& res) {
  ArcSpec left{0.0, theta, false, false};
  ArcSpec right{theta, kPi, false, false};
  const int rl =
      std::max(64, static_cast<int>(resolution * theta / kPi));
  const int rr =
      std::max(64, static_cast<int>(resolution * (kPi - theta) / kPi));
  const double v = 0.5 * (gamma_char(arc_eigenvalue(left, a, rl), s, 1) +
                          gamma_char(arc_eigenvalue(right, a, rr), s, 1));
  res.trace.push_back({{theta}, v});
  return v;
}

double nu_objective(double t1, double t2, double s, double a, int resolution,
                    ExponentResult& res) {
  ArcSpec arc1{0.0, t1, false, false};
  ArcSpec arc2{t2, kPi, false, false};
  const int r1 = std::max(64, static_cast<int>(resolution * t1 / kPi));
  const int r2 =
      std::max(64, static_cast<int>(resolution * (kPi - t2) / kPi));
  const double v = 0.5 * (gamma_char(arc_eigenvalue(arc1, a, r1), s, 1) +
                          gamma_char(arc_eigenvalue(arc2, a, r2), s, 1));
  res.trace.push_back({{t1, t2}, v});
  return v;
}

double trace_min(const ExponentResult& res) {
  double best = res.trace.front().second;
  for (const auto& [params, v] : res.trace) best = std::min(best, v);
  return best;
}

constexpr double kGolden = 0.61803398874989484820;

}  // namespace

ExponentResult optimize_mu(double s, int resolution, const OptimConfig& cfg) {
  const double a = 1.0 - 2.0 * s;
  ExponentResult res;
  res.grid_resolution = resolution;

  // Keep at least a few mesh cells on each side of the split.
  const double margin = 8.0 * kPi / resolution;
  double lo = margin, hi = kPi - margin;
  auto J = [&](double t) { return mu_objective(t, s, a, resolution, res); };

  double x1 = hi - kGolden * (hi - lo);
  double x2 = lo + kGolden * (hi - lo);
  double f1 = J(x1), f2 = J(x2);
  while (hi - lo > cfg.theta_tol) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - kGolden * (hi - lo);
      f1 = J(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + kGolden * (hi - lo);
      f2 = J(x2);
    }
  }
  res.value = trace_min(res);
  return res;
}

ExponentResult optimize_nu(double s, int resolution, const OptimConfig& cfg) {
  const double a = 1.0 - 2.0 * s;
  ExponentResult res;
  res.grid_resolution = resolution;
  // Only equator sharing is excluded (t1 < pi, t2 > 0, strictly); the
  // infimum sits at the corner t1 -> pi, t2 -> 0 and the eigenvalue feels a
  // wall offset eps like eps^{1-a}, so the bound must not scale with the
  // mesh.
  const double eps_th = 1e-6;
  const double lo = eps_th, hi = kPi - eps_th;
  auto J = [&](double t1, double t2) {
    return nu_objective(t1, t2, s, a, resolution, res);
  };

  // Coarse grid over (0,pi)^2; arcs may overlap in the interior, only the
  // equator points are exclusive (t1 < pi, t2 > 0).
  const int np = std::max(6, cfg.coarse_points);
  double best1 = lo, best2 = hi, bestv = 1e300;
  for (int i = 0; i < np; ++i) {
    const double t1 = lo + (hi - lo) * i / double(np - 1);
    for (int j = 0; j < np; ++j) {
      const double t2 = lo + (hi - lo) * j / double(np - 1);
      const double v = J(t1, t2);
      if (v < bestv) {
        bestv = v;
        best1 = t1;
        best2 = t2;
      }
    }
  }

  // Coordinate descent with golden-section line searches.
  auto line_min = [&](bool first_coord) {
    double llo = lo, lhi = hi;
    auto F = [&](double t) {
      return first_coord ? J(t, best2) : J(best1, t);
    };
    double x1 = lhi - kGolden * (lhi - llo);
    double x2 = llo + kGolden * (lhi - llo);
    double f1 = F(x1), f2 = F(x2);
    while (lhi - llo > cfg.theta_tol) {
      if (f1 <= f2) {
        lhi = x2;
        x2 = x1;
        f2 = f1;
        x1 = lhi - kGolden * (lhi - llo);
        f1 = F(x1);
      } else {
        llo = x1;
        x1 = x2;
        f1 = f2;
        x2 = llo + kGolden * (lhi - llo);
        f2 = F(x2);
      }
    }
    return 0.5 * (llo + lhi);
  };
  for (int round = 0; round < 2; ++round) {
    best1 = line_min(true);
    best2 = line_min(false);
  }
  res.value = trace_min(res);
  return res;
}

}  // namespace fraclap
