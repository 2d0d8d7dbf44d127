#include "fraclap/barriers.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fraclap/quadrature.hpp"

namespace fraclap {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

BarrierParams BarrierParams::make(double a, double p, double M, double delta) {
  if (!(a > -1.0 && a < 1.0) || !(p > 0.0) || !(M > 0.0) || !(delta >= 0.0))
    throw std::invalid_argument("BarrierParams: bad arguments");
  BarrierParams bp;
  bp.a = a;
  bp.p = p;
  bp.b = 1.0 + (1.0 - a) / p;
  bp.M = M;
  bp.delta = delta;
  // c normalizes f(+inf) = 1.  With t = tan(u) the mass becomes
  // int_{-pi/2}^{pi/2} cos(u)^{b-2} du = int_0^pi sin^{b-2}, and b-2 > -1.
  bp.c = 1.0 / sin_pow_total(bp.b - 2.0);
  return bp;
}

double barrier_f(double x, const BarrierParams& bp) {
  // f(x) = c int_{-inf}^x (1+t^2)^{-b/2} dt = c int_0^{atan(x)+pi/2} sin^{b-2}.
  const double upper = std::atan(x) + kPi / 2.0;
  return bp.c * sin_pow_integral(bp.b - 2.0, 0.0, upper);
}

double barrier_gM(double x, const BarrierParams& bp) {
  const double scale = std::pow(bp.M, 1.0 / (2.0 * bp.s()));
  return barrier_f(scale * (x - 1.0), bp) + barrier_f(scale * (-x - 1.0), bp);
}

double poisson_extension(const std::function<double(double)>& g,
                         double g_limit, double x, double y, double a,
                         double tol) {
  if (!(y >= 0.0)) throw std::invalid_argument("poisson_extension: y >= 0");
  if (y == 0.0) return g(x);
  // With xi = x - y tan(u) the kernel extension becomes
  //   (1/N_a) int_{-pi/2}^{pi/2} cos(u)^{-a} g(x - y tan u) du,
  // N_a = int cos^{-a}; constants extend to themselves.  The bounded tail is
  // split off through g_limit so the integrand decays at the endpoints.
  const double norm = sin_pow_total(-a);
  auto integrand = [&](double u) {
    const double cu = std::cos(u);
    if (cu <= 0.0) return 0.0;
    return std::pow(cu, -a) * (g(x - y * std::tan(u)) - g_limit);
  };
  // Integrate between the images of the transition points of g (the barrier
  // profiles switch near xi = +-1) so the adaptive rule sees smooth pieces.
  std::vector<double> breaks{-kPi / 2.0, kPi / 2.0};
  for (double xi : {-1.0, 0.0, 1.0})
    breaks.push_back(std::atan((x - xi) / y));
  std::sort(breaks.begin(), breaks.end());
  double acc = 0.0;
  for (size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (breaks[i + 1] - breaks[i] < 1e-14) continue;
    acc += adaptive_simpson(integrand, breaks[i], breaks[i + 1],
                            tol * norm / breaks.size());
  }
  return g_limit + acc / norm;
}

double supersolution_wdelta(double x, double y, const BarrierParams& bp,
                            double tol) {
  auto g = [&](double xi) { return barrier_gM(xi, bp); };
  // g_M -> f(+inf) = 1 at both ends.
  return bp.delta * std::pow(bp.M, -1.0 / bp.p) +
         poisson_extension(g, 1.0, x, y, bp.a, tol);
}

DecayCase run_decay_case(double s, double p, double M, double delta, double h,
                         int nx, int ny, const SolverConfig& cfg,
                         DecayClosure closure) {
  if (std::fabs(h) > delta + 1e-15)
    throw std::invalid_argument("run_decay_case: need |h| <= delta");
  ProblemParams params = ProblemParams::make(s, 2, p, 1.0, M);
  params.reactions[0] =
      (h == 0.0) ? ReactionSpec::zero() : ReactionSpec::constant(h);
  params.reactions[1] = ReactionSpec::zero();

  // Wide box with the unit hemisphere arc ending exactly on the top data
  // row; the lateral closure sits far enough out that its influence on the
  // inner trace is small against the decay margins.
  const Grid grid = build_grid(-3.5, 3.5, 1.0, nx, ny,
                               default_grading_exponent(params.a), params.a);
  BoundaryData bdata = BoundaryData::constant(params, grid, 1.0);
  bdata.frozen[1] = true;  // unit partner carries the -M v^p sink
  bdata.tag = closure == DecayClosure::Profile ? "DECAY_UNIT:PROFILE"
                                               : "DECAY_UNIT:CONST";

  // Warm start from the x-independent profile v = A + M A^p z(y) with
  // A + M A^p z(H) = 1, the exact discrete solution away from the laterals.
  const double zH = grid.z_nodes.back();
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double slope = std::max(M * std::pow(mid, p) - h, 0.0);
    (mid + slope * zH < 1.0 ? lo : hi) = mid;
  }
  const double A = 0.5 * (lo + hi);
  const double slope = std::max(M * std::pow(A, p) - h, 0.0);
  Field init = Field::constant(params, grid, 1.0);
  for (int j = 0; j < grid.ny(); ++j) {
    const double v = std::min(1.0, A + slope * grid.z_nodes[j]);
    for (int i = 0; i < grid.nx(); ++i) init.at(0, i, j) = v;
    if (closure == DecayClosure::Profile)
      bdata.left[0][j] = bdata.right[0][j] = v;
  }
  auto [field, report] = solve_system(params, grid, bdata, init, cfg);
  return {std::move(field), std::move(bdata), report};
}

DecayResult decay_check(const Field& field, const BoundaryData& bdata,
                        const BarrierParams& bp) {
  if (bdata.tag.rfind("DECAY_UNIT", 0) != 0)
    throw std::invalid_argument(
        "decay_check: field was not produced with the DECAY_UNIT boundary "
        "condition (tag '" +
        bdata.tag + "')");
  const Grid& g = field.grid;
  const double xc = 0.5 * (g.x_lo() + g.x_hi());
  if (g.height() < 1.0 || xc - 1.0 < g.x_lo() || xc + 1.0 > g.x_hi())
    throw std::invalid_argument(
        "decay_check: domain does not contain the unit half-ball");

  // sup of the trace over |x - xc| <= 1/2.
  double lhs = 0.0;
  for (int i = 0; i < g.nx(); ++i)
    if (std::fabs(g.x_nodes[i] - xc) <= 0.5)
      lhs = std::max(lhs, field.values[0][i]);

  // sup of v on the unit hemisphere arc, bilinearly interpolated.
  const auto& v = field.values[0];
  auto sample = [&](double x, double y) {
    double tx = (x - g.x_lo()) / g.dx();
    int ix = std::clamp(static_cast<int>(std::floor(tx)), 0, g.nx() - 2);
    double fx = std::clamp(tx - ix, 0.0, 1.0);
    auto it = std::upper_bound(g.y_nodes.begin(), g.y_nodes.end(), y);
    int jy = std::clamp(static_cast<int>(it - g.y_nodes.begin()) - 1, 0,
                        g.ny() - 2);
    double fy = std::clamp(
        (y - g.y_nodes[jy]) / (g.y_nodes[jy + 1] - g.y_nodes[jy]), 0.0, 1.0);
    const int nx = g.nx();
    return (1 - fx) * (1 - fy) * v[jy * nx + ix] +
           fx * (1 - fy) * v[jy * nx + ix + 1] +
           (1 - fx) * fy * v[(jy + 1) * nx + ix] +
           fx * fy * v[(jy + 1) * nx + ix + 1];
  };
  double arc_sup = 0.0;
  const int n_arc = 720;
  for (int t = 0; t <= n_arc; ++t) {
    const double th = kPi * t / n_arc;
    arc_sup = std::max(arc_sup, sample(xc + std::cos(th), std::sin(th)));
  }

  DecayResult res;
  res.lhs = lhs;
  res.rhs = (1.0 + bp.delta) * std::pow(bp.M, -1.0 / bp.p) * arc_sup;
  res.margin = res.rhs - res.lhs;
  res.ok = res.margin >= 0.0;
  return res;
}

}  // namespace fraclap
