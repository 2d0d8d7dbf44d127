#include "fraclap/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace fraclap {

namespace {

double z_of(double y, double a) {
  return std::pow(y, 1.0 - a) / (1.0 - a);
}

}  // namespace

double default_grading_exponent(double a) {
  // Quasi-uniform spacing of z = y^{1-a}/(1-a): y_j ~ j^{1/(1-a)}.
  return std::max(1.0, 1.0 / (1.0 - a));
}

double mean_pow_weight(double a, double y0, double y1) {
  if (!(y1 > y0) || y0 < 0.0)
    throw std::invalid_argument("mean_pow_weight: bad segment");
  const double ap1 = 1.0 + a;
  return (std::pow(y1, ap1) - std::pow(y0, ap1)) / (ap1 * (y1 - y0));
}

double Grid::control_len_y(int j) const {
  const int n = ny();
  const double lo = (j == 0) ? 0.0 : 0.5 * (y_nodes[j - 1] + y_nodes[j]);
  const double hi =
      (j == n - 1) ? y_nodes[n - 1] : 0.5 * (y_nodes[j] + y_nodes[j + 1]);
  return hi - lo;
}

namespace {

void finalize_weights(Grid& g) {
  const int ny = g.ny();
  g.z_nodes.resize(ny);
  for (int j = 0; j < ny; ++j) g.z_nodes[j] = z_of(g.y_nodes[j], g.a);

  g.face_weights_x.resize(ny);
  for (int j = 0; j < ny; ++j) {
    const double lo = (j == 0) ? 0.0 : 0.5 * (g.y_nodes[j - 1] + g.y_nodes[j]);
    const double hi = (j == ny - 1)
                          ? g.y_nodes[ny - 1]
                          : 0.5 * (g.y_nodes[j] + g.y_nodes[j + 1]);
    g.face_weights_x[j] = mean_pow_weight(g.a, lo, hi);
  }

  g.face_weights_y.resize(ny - 1);
  for (int j = 0; j < ny - 1; ++j) {
    const double dy = g.y_nodes[j + 1] - g.y_nodes[j];
    const double dz = g.z_nodes[j + 1] - g.z_nodes[j];
    g.face_weights_y[j] = dy / dz;
  }

  for (double w : g.face_weights_x)
    if (!(w > 0.0) || !std::isfinite(w))
      throw std::invalid_argument("Grid: non-positive x face weight");
  for (double w : g.face_weights_y)
    if (!(w > 0.0) || !std::isfinite(w))
      throw std::invalid_argument("Grid: non-positive y face weight");
}

}  // namespace

Grid build_grid(double x_lo, double x_hi, double height, int nx, int ny,
                double grading_exponent, double a) {
  if (!(x_lo < x_hi) || !(height > 0.0))
    throw std::invalid_argument("build_grid: bad extents");
  if (nx < 3 || ny < 3)
    throw std::invalid_argument("build_grid: nx, ny >= 3 required");
  if (!(grading_exponent >= 1.0))
    throw std::invalid_argument("build_grid: grading exponent >= 1 required");
  if (!(a > -1.0 && a < 1.0))
    throw std::invalid_argument("build_grid: a must be in (-1,1)");

  Grid g;
  g.a = a;
  g.grading_exponent = grading_exponent;
  g.x_nodes.resize(nx);
  for (int i = 0; i < nx; ++i)
    g.x_nodes[i] = x_lo + (x_hi - x_lo) * i / double(nx - 1);
  g.x_nodes[nx - 1] = x_hi;
  g.y_nodes.resize(ny);
  for (int j = 0; j < ny; ++j)
    g.y_nodes[j] = height * std::pow(j / double(ny - 1), grading_exponent);
  g.y_nodes[ny - 1] = height;
  finalize_weights(g);
  return g;
}

Grid grid_from_nodes(std::vector<double> x_nodes, std::vector<double> y_nodes,
                     double a) {
  if (x_nodes.size() < 3 || y_nodes.size() < 3)
    throw std::invalid_argument("grid_from_nodes: nx, ny >= 3 required");
  if (y_nodes.front() != 0.0)
    throw std::invalid_argument("grid_from_nodes: y_nodes[0] must be 0");
  for (size_t i = 1; i < x_nodes.size(); ++i)
    if (!(x_nodes[i] > x_nodes[i - 1]))
      throw std::invalid_argument("grid_from_nodes: x_nodes not increasing");
  for (size_t j = 1; j < y_nodes.size(); ++j)
    if (!(y_nodes[j] > y_nodes[j - 1]))
      throw std::invalid_argument("grid_from_nodes: y_nodes not increasing");
  Grid g;
  g.a = a;
  g.grading_exponent = 0.0;
  g.x_nodes = std::move(x_nodes);
  g.y_nodes = std::move(y_nodes);
  finalize_weights(g);
  return g;
}

}  // namespace fraclap
