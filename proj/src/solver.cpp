#include "fraclap/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fraclap {

BoundaryData BoundaryData::constant(const ProblemParams& params,
                                    const Grid& grid, double c) {
  BoundaryData b;
  b.top.assign(params.k, std::vector<double>(grid.nx(), c));
  b.left.assign(params.k, std::vector<double>(grid.ny(), c));
  b.right.assign(params.k, std::vector<double>(grid.ny(), c));
  b.frozen.assign(params.k, false);
  b.tag = "CONSTANT";
  return b;
}

BoundaryData BoundaryData::mirror_crossing(const ProblemParams& params,
                                           const Grid& grid, double amp) {
  if (params.k != 2)
    throw std::invalid_argument("mirror_crossing preset requires k = 2");
  BoundaryData b;
  const int nx = grid.nx(), ny = grid.ny();
  b.top.assign(2, std::vector<double>(nx, 0.0));
  b.left.assign(2, std::vector<double>(ny, 0.0));
  b.right.assign(2, std::vector<double>(ny, 0.0));
  b.frozen.assign(2, false);
  b.tag = "MIRROR_CROSSING";
  const double xc = 0.5 * (grid.x_lo() + grid.x_hi());
  const double half = 0.5 * (grid.x_hi() - grid.x_lo());
  auto g1 = [&](double x) { return amp * 0.5 * (1.0 + (x - xc) / half); };
  for (int i = 0; i < nx; ++i) {
    const double x = grid.x_nodes[i];
    b.top[0][i] = g1(x);
    b.top[1][i] = g1(2.0 * xc - x);
  }
  for (int j = 0; j < ny; ++j) {
    b.left[0][j] = g1(grid.x_lo());
    b.left[1][j] = g1(grid.x_hi());
    b.right[0][j] = g1(grid.x_hi());
    b.right[1][j] = g1(grid.x_lo());
  }
  return b;
}

void BoundaryData::validate(const ProblemParams& params,
                            const Grid& grid) const {
  const size_t k = params.k;
  if (top.size() != k || left.size() != k || right.size() != k ||
      frozen.size() != k)
    throw std::invalid_argument("BoundaryData: component count mismatch");
  for (size_t c = 0; c < k; ++c) {
    if (top[c].size() != static_cast<size_t>(grid.nx()) ||
        left[c].size() != static_cast<size_t>(grid.ny()) ||
        right[c].size() != static_cast<size_t>(grid.ny()))
      throw std::invalid_argument("BoundaryData: sample size mismatch");
    for (const auto* arr : {&top[c], &left[c], &right[c]})
      for (double v : *arr)
        if (!std::isfinite(v) || v < 0.0)
          throw std::invalid_argument(
              "BoundaryData: samples must be finite and nonnegative");
  }
}

namespace {

struct Stencil {
  int nx, ny;
  double dx;
  std::vector<double> cx;    // Mx[j]/dx, lateral flux coefficient
  std::vector<double> cy_up;  // dx * 1/(z_{j+1}-z_j)
  std::vector<double> cy_dn;  // dx * 1/(z_j - z_{j-1})
  std::vector<double> inv_area;
  double dz0;

  explicit Stencil(const Grid& g) {
    nx = g.nx();
    ny = g.ny();
    dx = g.dx();
    cx.assign(ny, 0.0);
    cy_up.assign(ny, 0.0);
    cy_dn.assign(ny, 0.0);
    inv_area.assign(ny, 0.0);
    for (int j = 1; j < ny - 1; ++j) {
      cx[j] = g.weight_integral_x(j) / dx;
      cy_up[j] = dx * g.trans_y(j);
      cy_dn[j] = dx * g.trans_y(j - 1);
      inv_area[j] = 1.0 / (dx * g.control_len_y(j));
    }
    dz0 = g.z_nodes[1] - g.z_nodes[0];
  }
};

double interior_residual(const Stencil& st, const std::vector<double>& v,
                         int i, int j) {
  const int id = j * st.nx + i;
  const double vc = v[id];
  const double net = st.cx[j] * (v[id - 1] + v[id + 1] - 2.0 * vc) +
                     st.cy_up[j] * (v[id + st.nx] - vc) +
                     st.cy_dn[j] * (v[id - st.nx] - vc);
  return net * st.inv_area[j];
}

// Scalar bottom map phi(t) = (t - v_up)/dz0 + competition(t) - f(t); strictly
// increasing in t for the competition families used here.
struct BottomEq {
  const ProblemParams* params;
  double dz0;
  double x;
  double v_up;
  int comp;
  std::vector<double>* dens;  // scratch density vector at this node

  double operator()(double t) const {
    auto& d = *dens;
    const double saved = d[comp];
    d[comp] = t;
    const double f =
        eval_reaction(params->reactions[comp], x, d, comp);
    const double cmp = competition_term(*params, comp, d);
    d[comp] = saved;
    return (t - v_up) / dz0 + cmp - f;
  }
};

// Unique nonnegative root of the increasing scalar map; regula-falsi style
// proposals with bisection safeguard on a bracket [lo,hi] starting at 0.
double solve_bottom_scalar(const BottomEq& eq, double t_init) {
  const double phi0 = eq(0.0);
  if (phi0 >= 0.0) return 0.0;
  double lo = 0.0, flo = phi0;
  double hi = std::max({t_init, eq.v_up, 1e-12});
  double fhi = eq(hi);
  int guard = 0;
  while (fhi < 0.0) {
    lo = hi;
    flo = fhi;
    hi *= 2.0;
    fhi = eq(hi);
    if (++guard > 200 || !std::isfinite(fhi))
      throw SolverError("bottom scalar solve: no finite upper bracket");
  }
  double t = 0.5 * (lo + hi);
  for (int it = 0; it < 100 && hi - lo > 1e-16 * (1.0 + hi); ++it) {
    double tn = lo - flo * (hi - lo) / (fhi - flo);
    if (!(tn > lo && tn < hi)) tn = 0.5 * (lo + hi);
    const double ftn = eq(tn);
    t = tn;
    if (ftn == 0.0) return tn;
    if (ftn > 0.0) {
      hi = tn;
      fhi = ftn;
    } else {
      lo = tn;
      flo = ftn;
    }
    const double scale = (std::fabs(tn) + std::fabs(eq.v_up)) / eq.dz0 + 1.0;
    if (std::fabs(ftn) <= 1e-15 * scale) return tn;
  }
  return t;
}

}  // namespace

std::vector<double> interior_defect(const Field& field, int comp) {
  const Grid& g = field.grid;
  Stencil st(g);
  std::vector<double> out(size_t(st.nx) * st.ny, 0.0);
  const auto& v = field.values[comp];
  for (int j = 1; j < st.ny - 1; ++j)
    for (int i = 1; i < st.nx - 1; ++i)
      out[j * st.nx + i] = interior_residual(st, v, i, j);
  return out;
}

std::vector<double> conormal_trace(const Field& field, int comp) {
  const Grid& g = field.grid;
  const int nx = g.nx();
  const double dz0 = g.z_nodes[1] - g.z_nodes[0];
  std::vector<double> out(nx);
  const auto& v = field.values[comp];
  for (int i = 0; i < nx; ++i) out[i] = -(v[nx + i] - v[i]) / dz0;
  return out;
}

std::vector<double> boundary_defect(const Field& field, int comp) {
  const Grid& g = field.grid;
  const int nx = g.nx();
  const int k = field.params.k;
  std::vector<double> out(nx, 0.0);
  std::vector<double> dens(k);
  const std::vector<double> conormal = conormal_trace(field, comp);
  for (int i = 1; i < nx - 1; ++i) {
    for (int c = 0; c < k; ++c) dens[c] = field.values[c][i];
    const double f = eval_reaction(field.params.reactions[comp],
                                   g.x_nodes[i], dens, comp);
    const double cmp = competition_term(field.params, comp, dens);
    out[i] = conormal[i] - f + cmp;
  }
  return out;
}

std::pair<Field, SolveReport> solve_system(const ProblemParams& params,
                                           const Grid& grid,
                                           const BoundaryData& bdata,
                                           const Field& init,
                                           const SolverConfig& cfg) {
  params.validate();
  bdata.validate(params, grid);
  if (init.values.size() != static_cast<size_t>(params.k) ||
      init.values[0].size() != size_t(grid.nx()) * grid.ny())
    throw std::invalid_argument("solve_system: init shape mismatch");
  if (!(cfg.tolerance > 0.0) || !(cfg.damping > 0.0 && cfg.damping <= 1.0))
    throw std::invalid_argument("solve_system: bad solver config");

  const auto t_start = std::chrono::steady_clock::now();
#ifdef _OPENMP
  if (cfg.threads > 0) omp_set_num_threads(cfg.threads);
#endif
  const int nx = grid.nx(), ny = grid.ny(), k = params.k;
  Stencil st(grid);

  Field field = init;
  field.params = params;
  field.grid = grid;

  // Pin the Dirichlet data (top row wins at the top corners).
  for (int c = 0; c < k; ++c) {
    auto& v = field.values[c];
    for (int j = 0; j < ny; ++j) {
      v[j * nx] = bdata.left[c][j];
      v[j * nx + nx - 1] = bdata.right[c][j];
    }
    for (int i = 0; i < nx; ++i) v[(ny - 1) * nx + i] = bdata.top[c][i];
  }

  const double omega = cfg.damping;

  auto update_interior = [&](int c, int i, int j) {
    auto& v = field.values[c];
    const int id = j * nx + i;
    const double num = st.cx[j] * (v[id - 1] + v[id + 1]) +
                       st.cy_up[j] * v[id + nx] + st.cy_dn[j] * v[id - nx];
    const double den = 2.0 * st.cx[j] + st.cy_up[j] + st.cy_dn[j];
    const double target = num / den;
    v[id] = std::max(0.0, v[id] + omega * (target - v[id]));
  };

  auto update_bottom_node = [&](int i, std::vector<double>& dens) {
    for (int c = 0; c < k; ++c) dens[c] = field.values[c][i];
    for (int c = 0; c < k; ++c) {
      if (bdata.frozen[c]) continue;
      BottomEq eq{&params, st.dz0, grid.x_nodes[i], field.values[c][nx + i], c,
                  &dens};
      const double root = solve_bottom_scalar(eq, dens[c]);
      const double t = std::max(0.0, dens[c] + omega * (root - dens[c]));
      dens[c] = t;
      field.values[c][i] = t;
    }
  };

  // Within one red-black color the writes are disjoint and all reads touch
  // the other color (or the same node), so the result is independent of the
  // visit order; lexicographic sweeps stay strictly sequential.
  auto sweep_color = [&](int parity) {
    if (parity < 0) {
      std::vector<double> dens(k);
      for (int j = 1; j < ny - 1; ++j)
        for (int c = 0; c < k; ++c) {
          if (bdata.frozen[c]) continue;
          for (int i = 1; i < nx - 1; ++i) update_interior(c, i, j);
        }
      for (int i = 1; i < nx - 1; ++i) update_bottom_node(i, dens);
      return;
    }
#pragma omp parallel
    {
      std::vector<double> dens(k);
#pragma omp for schedule(static)
      for (int j = 1; j < ny - 1; ++j)
        for (int c = 0; c < k; ++c) {
          if (bdata.frozen[c]) continue;
          const int start = ((1 + j) & 1) == parity ? 1 : 2;
          for (int i = start; i < nx - 1; i += 2) update_interior(c, i, j);
        }
#pragma omp for schedule(static)
      for (int i = 1; i < nx - 1; ++i)
        if ((i & 1) == parity) update_bottom_node(i, dens);
    }
  };

  auto sup_defect = [&]() {
    double worst = 0.0;
    for (int c = 0; c < k; ++c) {
      if (bdata.frozen[c]) continue;
      const auto& v = field.values[c];
      for (int j = 1; j < ny - 1; ++j)
        for (int i = 1; i < nx - 1; ++i)
          worst = std::max(worst,
                           std::fabs(interior_residual(st, v, i, j)));
    }
    std::vector<double> d(k);
    for (int i = 1; i < nx - 1; ++i) {
      for (int c = 0; c < k; ++c) d[c] = field.values[c][i];
      for (int c = 0; c < k; ++c) {
        if (bdata.frozen[c]) continue;
        const double con = -(field.values[c][nx + i] - field.values[c][i]) /
                           st.dz0;
        const double f =
            eval_reaction(params.reactions[c], grid.x_nodes[i], d, c);
        const double cmp = competition_term(params, c, d);
        worst = std::max(worst, std::fabs(con - f + cmp));
      }
    }
    return worst;
  };

  SolveReport report;
  double defect = sup_defect();
  long sweep = 0;
  while (defect > cfg.tolerance && sweep < cfg.max_sweeps) {
    if (cfg.sweep_order == SweepOrder::RedBlack) {
      sweep_color(0);
      sweep_color(1);
    } else {
      sweep_color(-1);
    }
    ++sweep;
    // The sup defect costs about as much as a sweep; sample it sparsely once
    // the iteration is underway.
    if (sweep < 16 || (sweep & 7) == 0 || sweep == cfg.max_sweeps)
      defect = sup_defect();
    if (!std::isfinite(defect))
      throw SolverError("solve_system: NaN detected in defect");
  }
  defect = sup_defect();

  report.iterations = sweep;
  report.final_residual = defect;
  report.converged = defect <= cfg.tolerance;
  report.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start)
          .count();
  for (int c = 0; c < k; ++c)
    for (double v : field.values[c])
      if (!std::isfinite(v))
        throw SolverError("solve_system: NaN detected in field");
  return {std::move(field), report};
}

}  // namespace fraclap
