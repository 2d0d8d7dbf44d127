#include "fraclap/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "fraclap/quadrature.hpp"
#include "fraclap/solver.hpp"

namespace fraclap {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Bilinear interpolation of a nodal array on the (x, graded-y) tensor grid.
struct Interp {
  const Grid* grid;
  const std::vector<double>* val;

  double operator()(double x, double y) const {
    const Grid& g = *grid;
    const int nx = g.nx(), ny = g.ny();
    double tx = (x - g.x_lo()) / g.dx();
    int ix = std::clamp(static_cast<int>(std::floor(tx)), 0, nx - 2);
    double fx = std::clamp(tx - ix, 0.0, 1.0);
    auto it = std::upper_bound(g.y_nodes.begin(), g.y_nodes.end(), y);
    int jy = std::clamp(static_cast<int>(it - g.y_nodes.begin()) - 1, 0,
                        ny - 2);
    double fy = std::clamp(
        (y - g.y_nodes[jy]) / (g.y_nodes[jy + 1] - g.y_nodes[jy]), 0.0, 1.0);
    const auto& v = *val;
    const double v00 = v[jy * nx + ix], v10 = v[jy * nx + ix + 1];
    const double v01 = v[(jy + 1) * nx + ix], v11 = v[(jy + 1) * nx + ix + 1];
    return (1 - fx) * (1 - fy) * v00 + fx * (1 - fy) * v10 +
           (1 - fx) * fy * v01 + fx * fy * v11;
  }
};

// Nodal |grad v|^2 by central differences (one-sided at the walls).
std::vector<double> grad_sq(const Grid& g, const std::vector<double>& v) {
  const int nx = g.nx(), ny = g.ny();
  std::vector<double> out(size_t(nx) * ny);
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const int il = std::max(i - 1, 0), ir = std::min(i + 1, nx - 1);
      const double gx = (v[j * nx + ir] - v[j * nx + il]) /
                        (g.x_nodes[ir] - g.x_nodes[il]);
      const int jl = std::max(j - 1, 0), jr = std::min(j + 1, ny - 1);
      const double gy = (v[jr * nx + i] - v[jl * nx + i]) /
                        (g.y_nodes[jr] - g.y_nodes[jl]);
      out[j * nx + i] = gx * gx + gy * gy;
    }
  }
  return out;
}

void check_radii(const Grid& g, double x0, const std::vector<double>& radii) {
  if (radii.size() < 1)
    throw std::invalid_argument("radial functional: no radii given");
  for (size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0) || (i > 0 && !(radii[i] > radii[i - 1])))
      throw std::invalid_argument("radial functional: radii must increase");
  }
  const double rmax = radii.back();
  if (x0 - rmax < g.x_lo() - 1e-12 || x0 + rmax > g.x_hi() + 1e-12 ||
      rmax > g.height() + 1e-12)
    throw std::invalid_argument(
        "radial functional: ball of radius " + std::to_string(rmax) +
        " around x=" + std::to_string(x0) + " leaves the domain");
}

// Cumulative polar quadrature of int (sin t)^w_exp rho^{r_exp} G drho dt over
// upper half-balls centered at (x0,0); the radial factor (area element plus
// any |X-X0| kernel power) is integrated exactly per sub-interval, the theta
// weight exactly per sector, and G by bilinear interpolation at midpoints.
std::vector<double> polar_cumulative(const Grid& g,
                                     const std::vector<double>& integrand,
                                     double x0,
                                     const std::vector<double>& radii,
                                     double w_exp, double r_exp,
                                     int n_theta = 128) {
  Interp G{&g, &integrand};
  const double rmax = radii.back();

  // Fine radial grid containing every requested radius.
  double min_dy = g.height();
  for (int j = 0; j + 1 < g.ny(); ++j)
    min_dy = std::min(min_dy, g.y_nodes[j + 1] - g.y_nodes[j]);
  double drho = 0.5 * std::min(g.dx(), std::max(min_dy, rmax / 512.0));
  const int max_segments = 3000;
  if (rmax / drho > max_segments) drho = rmax / max_segments;
  std::vector<double> rho{0.0};
  size_t next_mark = 0;
  while (rho.back() < rmax - 1e-15) {
    double r_next = rho.back() + drho;
    if (next_mark < radii.size() && radii[next_mark] <= r_next + 1e-15) {
      r_next = radii[next_mark];
      ++next_mark;
    }
    rho.push_back(std::min(r_next, rmax));
  }

  std::vector<double> wtheta(n_theta), ctheta(n_theta), stheta(n_theta);
  for (int m = 0; m < n_theta; ++m) {
    const double t0 = kPi * m / n_theta, t1 = kPi * (m + 1) / n_theta;
    wtheta[m] = sin_pow_integral(w_exp, t0, t1);
    const double tc = 0.5 * (t0 + t1);
    ctheta[m] = std::cos(tc);
    stheta[m] = std::sin(tc);
  }

  const double pe = 1.0 + r_exp;
  std::vector<double> out;
  out.reserve(radii.size());
  double acc = 0.0;
  size_t mark = 0;
  for (size_t l = 0; l + 1 < rho.size() && mark < radii.size(); ++l) {
    const double r0 = rho[l], r1 = rho[l + 1];
    const double radial = (std::pow(r1, pe) - std::pow(r0, pe)) / pe;
    const double rc = 0.5 * (r0 + r1);
    double ring = 0.0;
    for (int m = 0; m < n_theta; ++m)
      ring += wtheta[m] * G(x0 + rc * ctheta[m], rc * stheta[m]);
    acc += radial * ring;
    while (mark < radii.size() && radii[mark] <= r1 + 1e-12) {
      out.push_back(acc);
      ++mark;
    }
  }
  while (out.size() < radii.size()) out.push_back(acc);
  return out;
}

}  // namespace

double holder_quotient(const Field& field, int comp, double alpha,
                       const Box& sub, bool all_pairs) {
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw std::invalid_argument("holder_quotient: alpha must be in (0,1]");
  const Grid& g = field.grid;
  const int nx = g.nx(), ny = g.ny();
  std::vector<int> is, js;
  for (int i = 0; i < nx; ++i)
    if (g.x_nodes[i] >= sub.x_lo - 1e-12 && g.x_nodes[i] <= sub.x_hi + 1e-12)
      is.push_back(i);
  for (int j = 0; j < ny; ++j)
    if (g.y_nodes[j] >= sub.y_lo - 1e-12 && g.y_nodes[j] <= sub.y_hi + 1e-12)
      js.push_back(j);
  if (is.size() < 2 || js.size() < 2)
    throw std::invalid_argument("holder_quotient: empty subdomain");

  const auto& v = field.values[comp];
  auto quot = [&](int i0, int j0, int i1, int j1) {
    const double dv = v[j1 * nx + i1] - v[j0 * nx + i0];
    const double dx = g.x_nodes[i1] - g.x_nodes[i0];
    const double dy = g.y_nodes[j1] - g.y_nodes[j0];
    const double dist = std::hypot(dx, dy);
    return std::fabs(dv) / std::pow(dist, alpha);
  };

  double best = 0.0;
  // Adjacent pairs realize the sup for rough, mesh-monotone modes.
  for (size_t b = 0; b + 1 < js.size(); ++b)
    for (int i : is) best = std::max(best, quot(i, js[b], i, js[b + 1]));
  for (int j : js)
    for (size_t aI = 0; aI + 1 < is.size(); ++aI)
      best = std::max(best, quot(is[aI], j, is[aI + 1], j));

  // Decimated lattice (or all nodes) for the long-range pairs.
  std::vector<std::pair<int, int>> pts;
  const int stride =
      all_pairs ? 1
                : std::max<int>(1, static_cast<int>(std::min(is.size(),
                                                             js.size())) /
                                       24);
  for (size_t bj = 0; bj < js.size(); bj += stride)
    for (size_t bi = 0; bi < is.size(); bi += stride)
      pts.emplace_back(is[bi], js[bj]);
  for (size_t u = 0; u < pts.size(); ++u)
    for (size_t w = u + 1; w < pts.size(); ++w)
      best = std::max(best, quot(pts[u].first, pts[u].second, pts[w].first,
                                 pts[w].second));
  return best;
}

RadialProfile morrey_quotient(const Field& field, double center_x,
                              const std::vector<double>& radii, double eps) {
  if (!(eps > 0.0 && eps < 0.5))
    throw std::invalid_argument("morrey_quotient: eps must be in (0,1/2)");
  const Grid& g = field.grid;
  check_radii(g, center_x, radii);
  std::vector<double> total(size_t(g.nx()) * g.ny(), 0.0);
  for (int c = 0; c < field.params.k; ++c) {
    auto gs = grad_sq(g, field.values[c]);
    for (size_t n = 0; n < total.size(); ++n) total[n] += gs[n];
  }
  auto ints = polar_cumulative(g, total, center_x, radii, 0.0, 1.0);
  RadialProfile prof;
  prof.center_x = center_x;
  prof.radii = radii;
  prof.values.resize(radii.size());
  for (size_t m = 0; m < radii.size(); ++m)
    prof.values[m] = ints[m] / std::pow(radii[m], 2.0 - 2.0 * eps);
  return prof;
}

RadialProfile acf_quotient(const Grid& grid, const std::vector<double>& z1,
                           const std::vector<double>& z2, double center_x,
                           double mu, const std::vector<double>& radii) {
  check_radii(grid, center_x, radii);
  const int nx = grid.nx();
  if (z1.size() != size_t(nx) * grid.ny() || z2.size() != z1.size())
    throw std::invalid_argument("acf_quotient: array size mismatch");

  // Segregation precondition on the trace, scaled by the data size.
  double sup1 = 0.0, sup2 = 0.0;
  for (double v : z1) sup1 = std::max(sup1, std::fabs(v));
  for (double v : z2) sup2 = std::max(sup2, std::fabs(v));
  const double tol_seg = 1e-6 * std::max(sup1 * sup2, 1e-300);
  std::string offenders;
  int n_off = 0;
  for (int i = 0; i < nx; ++i) {
    if (std::fabs(z1[i] * z2[i]) > tol_seg) {
      if (n_off < 8) offenders += " " + std::to_string(i);
      ++n_off;
    }
  }
  if (n_off > 0)
    throw std::invalid_argument(
        "acf_quotient: z1*z2 != 0 on the trace at " + std::to_string(n_off) +
        " nodes:" + offenders);
  // Both factors must vanish at the center, on the same scale that the
  // segregation tolerance allows for the pairwise product.
  const Interp iz1{&grid, &z1}, iz2{&grid, &z2};
  const double c_tol = std::sqrt(tol_seg);
  if (std::fabs(iz1(center_x, 0.0)) > c_tol ||
      std::fabs(iz2(center_x, 0.0)) > c_tol)
    throw std::invalid_argument("acf_quotient: z_i(center) != 0");

  // Kernel |X-X0|^{-(N-2s)} = rho^{-a}; it cancels the radial part of y^a,
  // so the radial measure is plain rho and the center cell is exact.
  const double a = grid.a;
  auto g1 = grad_sq(grid, z1);
  auto g2 = grad_sq(grid, z2);
  auto i1 = polar_cumulative(grid, g1, center_x, radii, a, 1.0);
  auto i2 = polar_cumulative(grid, g2, center_x, radii, a, 1.0);

  RadialProfile prof;
  prof.center_x = center_x;
  prof.radii = radii;
  prof.values.resize(radii.size());
  for (size_t m = 0; m < radii.size(); ++m) {
    const double scale = std::pow(radii[m], 2.0 * mu);
    prof.values[m] = (i1[m] / scale) * (i2[m] / scale);
  }
  return prof;
}

AlmgrenResult almgren_EH(const Field& field, int comp, double center_x,
                         const std::vector<double>& radii) {
  const Grid& g = field.grid;
  check_radii(g, center_x, radii);
  const ProblemParams& pp = field.params;
  const double a = g.a;
  const int nx = g.nx();

  auto gs = grad_sq(g, field.values[comp]);
  auto vol = polar_cumulative(g, gs, center_x, radii, a, 1.0 + a);

  // Trace term: int -f_i u_i + u_i * competition over |x - x0| <= r.
  std::vector<double> tr(nx);
  {
    std::vector<double> dens(pp.k);
    for (int i = 0; i < nx; ++i) {
      for (int c = 0; c < pp.k; ++c) dens[c] = field.values[c][i];
      const double f =
          eval_reaction(pp.reactions[comp], g.x_nodes[i], dens, comp);
      tr[i] = dens[comp] * (competition_term(pp, comp, dens) - f);
    }
  }
  auto trace_cum = [&](double r) {
    const double xa = center_x - r, xb = center_x + r;
    Interp it{&g, &tr};
    // Trapezoid over interior nodes plus linearly interpolated end segments.
    double sum = 0.0;
    int first = nx, last = -1;
    for (int i = 0; i < nx; ++i)
      if (g.x_nodes[i] >= xa && g.x_nodes[i] <= xb) {
        first = std::min(first, i);
        last = std::max(last, i);
      }
    if (last < first) {
      return 0.5 * (it(xa, 0.0) + it(xb, 0.0)) * (xb - xa);
    }
    for (int i = first; i < last; ++i)
      sum += 0.5 * (tr[i] + tr[i + 1]) * (g.x_nodes[i + 1] - g.x_nodes[i]);
    sum += 0.5 * (it(xa, 0.0) + tr[first]) * (g.x_nodes[first] - xa);
    sum += 0.5 * (tr[last] + it(xb, 0.0)) * (xb - g.x_nodes[last]);
    return sum;
  };

  // H(r) = r^{-N-a} int_{arc} y^a v^2 ds = int_0^pi (sin t)^a v(arc)^2 dt.
  const int n_theta = 256;
  std::vector<double> wtheta(n_theta), ct(n_theta), st(n_theta);
  for (int m = 0; m < n_theta; ++m) {
    const double t0 = kPi * m / n_theta, t1 = kPi * (m + 1) / n_theta;
    wtheta[m] = sin_pow_integral(a, t0, t1);
    ct[m] = std::cos(0.5 * (t0 + t1));
    st[m] = std::sin(0.5 * (t0 + t1));
  }
  Interp iv{&g, &field.values[comp]};

  AlmgrenResult res;
  res.E.center_x = res.H.center_x = center_x;
  res.E.radii = res.H.radii = radii;
  res.E.values.resize(radii.size());
  res.H.values.resize(radii.size());
  for (size_t m = 0; m < radii.size(); ++m) {
    const double r = radii[m];
    res.E.values[m] = std::pow(r, -a) * (vol[m] + trace_cum(r));
    double h = 0.0;
    for (int t = 0; t < n_theta; ++t) {
      const double v = iv(center_x + r * ct[t], r * st[t]);
      h += wtheta[t] * v * v;
    }
    res.H.values[m] = h;
  }

  const size_t n = radii.size();
  res.identity_residual.assign(n, 0.0);
  auto hprime = [&](size_t m) {
    if (m == 0)
      return (res.H.values[1] - res.H.values[0]) / (radii[1] - radii[0]);
    if (m == n - 1)
      return (res.H.values[n - 1] - res.H.values[n - 2]) /
             (radii[n - 1] - radii[n - 2]);
    return (res.H.values[m + 1] - res.H.values[m - 1]) /
           (radii[m + 1] - radii[m - 1]);
  };
  for (size_t m = 0; m < n; ++m)
    res.identity_residual[m] =
        std::fabs(hprime(m) - 2.0 * res.E.values[m] / radii[m]);
  return res;
}

HatField hat_field(const Field& field) {
  const ProblemParams& pp = field.params;
  const size_t n = field.values[0].size();
  HatField hf;
  hf.values.assign(pp.k, std::vector<double>(n, 0.0));
  for (int i = 0; i < pp.k; ++i) {
    hf.values[i] = field.values[i];
    for (int j = 0; j < pp.k; ++j) {
      if (j == i) continue;
      const double w = pp.aij(i, j) / pp.aij(j, i);
      for (size_t m = 0; m < n; ++m) hf.values[i][m] -= w * field.values[j][m];
    }
  }
  return hf;
}

double reflection_residual(const Field& field) {
  const ProblemParams& pp = field.params;
  if (pp.k != 2)
    throw std::invalid_argument(
        "reflection_residual requires k = 2 (use "
        "segregation_system_residual for k >= 3)");
  const Grid& g = field.grid;
  const int nx = g.nx();
  const double a12 = pp.aij(0, 1), a21 = pp.aij(1, 0);
  auto con1 = conormal_trace(field, 0);
  auto con2 = conormal_trace(field, 1);
  std::vector<double> dens(2);
  double worst = 0.0;
  for (int i = 1; i < nx - 1; ++i) {
    dens[0] = field.values[0][i];
    dens[1] = field.values[1][i];
    const double f1 = eval_reaction(pp.reactions[0], g.x_nodes[i], dens, 0);
    const double f2 = eval_reaction(pp.reactions[1], g.x_nodes[i], dens, 1);
    worst = std::max(worst, std::fabs(a21 * con1[i] - a12 * con2[i] -
                                      (a21 * f1 - a12 * f2)));
  }
  return worst;
}

SegregationResiduals segregation_system_residual(const Field& field) {
  const ProblemParams& pp = field.params;
  const Grid& g = field.grid;
  const int nx = g.nx(), k = pp.k;

  std::vector<std::vector<double>> con(k);
  for (int c = 0; c < k; ++c) con[c] = conormal_trace(field, c);

  SegregationResiduals out;
  out.upper.assign(k, 0.0);
  out.lower.assign(k, 0.0);
  out.complementarity.assign(k, 0.0);
  std::vector<double> dens(k), f(k);
  for (int i = 1; i < nx - 1; ++i) {
    for (int c = 0; c < k; ++c) dens[c] = field.values[c][i];
    for (int c = 0; c < k; ++c)
      f[c] = eval_reaction(pp.reactions[c], g.x_nodes[i], dens, c);
    for (int c = 0; c < k; ++c) {
      double con_hat = con[c][i], f_hat = f[c];
      for (int j = 0; j < k; ++j) {
        if (j == c) continue;
        const double w = pp.aij(c, j) / pp.aij(j, c);
        con_hat -= w * con[j][i];
        f_hat -= w * f[j];
      }
      out.upper[c] = std::max(out.upper[c], con[c][i] - f[c]);
      out.lower[c] = std::max(out.lower[c], f_hat - con_hat);
      out.complementarity[c] = std::max(
          out.complementarity[c], std::fabs(dens[c] * (con_hat - f_hat)));
    }
  }
  for (int c = 0; c < k; ++c) {
    out.upper[c] = std::max(out.upper[c], 0.0);
    out.lower[c] = std::max(out.lower[c], 0.0);
  }
  return out;
}

double fit_local_exponent(const std::vector<double>& x_nodes,
                          const std::vector<double>& trace, int x0_index,
                          const std::vector<double>& radii) {
  if (x0_index < 0 || x0_index >= static_cast<int>(x_nodes.size()) ||
      trace.size() != x_nodes.size())
    throw std::invalid_argument("fit_local_exponent: bad inputs");
  const double x0 = x_nodes[x0_index];
  const double span = x_nodes.back() - x_nodes.front();
  std::vector<double> lr, lo;
  for (double r : radii) {
    double mn = trace[x0_index], mx = trace[x0_index];
    for (size_t i = 0; i < x_nodes.size(); ++i) {
      // Tolerant inclusion so radii landing exactly on nodes pick the
      // boundary node on both sides.
      if (std::fabs(x_nodes[i] - x0) <= r + 1e-9 * span) {
        mn = std::min(mn, trace[i]);
        mx = std::max(mx, trace[i]);
      }
    }
    const double osc = mx - mn;
    if (osc > 0.0) {
      lr.push_back(std::log(r));
      lo.push_back(std::log(osc));
    }
  }
  if (lr.size() < 3)
    throw std::invalid_argument(
        "fit_local_exponent: fewer than 3 usable radii");
  const size_t n = lr.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < n; ++i) {
    sx += lr[i];
    sy += lo[i];
    sxx += lr[i] * lr[i];
    sxy += lr[i] * lo[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

std::vector<int> free_boundary(const Field& field, double threshold) {
  const int nx = field.grid.nx();
  std::vector<int> out;
  for (int i = 0; i < nx; ++i) {
    bool all_below = true;
    for (int c = 0; c < field.params.k && all_below; ++c)
      if (field.values[c][i] >= threshold) all_below = false;
    if (all_below) out.push_back(i);
  }
  return out;
}

int multiplicity(const Field& field, int x0_index, double threshold,
                 double r) {
  const Grid& g = field.grid;
  const int nx = g.nx();
  if (x0_index < 0 || x0_index >= nx)
    throw std::invalid_argument("multiplicity: bad index");
  const double x0 = g.x_nodes[x0_index];
  int count = 0;
  for (int c = 0; c < field.params.k; ++c) {
    for (int i = 0; i < nx; ++i) {
      if (std::fabs(g.x_nodes[i] - x0) <= r &&
          field.values[c][i] > threshold) {
        ++count;
        break;
      }
    }
  }
  return count;
}

double default_fb_threshold(double solver_tolerance) {
  return 10.0 * std::sqrt(solver_tolerance);
}

}  // namespace fraclap
