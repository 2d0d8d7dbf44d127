// Tensor half-rectangle mesh for the extension problem.  x is uniform on
// [x_lo,x_hi]; y is graded toward the trace, y_j = H*(j/(ny-1))^g.  The
// degenerate weight y^a enters through two precomputed face-weight arrays:
//
//   face_weights_x[j] : exact integral mean of y^a over the control segment
//                       of row j, used by the x-direction fluxes.  The bottom
//                       row mean h^a/(1+a) is evaluated in closed form.
//   face_weights_y[j] : effective weight of the horizontal face between rows
//                       j and j+1, (y_{j+1}-y_j)/(z_{j+1}-z_j) with
//                       z = y^{1-a}/(1-a).  Under z the operator satisfies
//                       y^a d/dy = d/dz, so two-point fluxes in z are exact
//                       on y^{2s}; the j=0 weight realizes the conormal limit.
#pragma once

#include <vector>

namespace fraclap {

struct Grid {
  std::vector<double> x_nodes;  // size nx, strictly increasing
  std::vector<double> y_nodes;  // size ny, y_nodes[0] = 0
  std::vector<double> z_nodes;  // y^{1-a}/(1-a)
  double a = 0.0;
  double grading_exponent = 1.0;  // 0 marks "rebuilt from explicit nodes"
  std::vector<double> face_weights_x;  // size ny
  std::vector<double> face_weights_y;  // size ny-1

  int nx() const { return static_cast<int>(x_nodes.size()); }
  int ny() const { return static_cast<int>(y_nodes.size()); }
  double dx() const { return x_nodes[1] - x_nodes[0]; }
  double x_lo() const { return x_nodes.front(); }
  double x_hi() const { return x_nodes.back(); }
  double height() const { return y_nodes.back(); }

  // Control-volume y-extent of row j (half cells at the walls).
  double control_len_y(int j) const;
  // Integral of y^a over the control segment of row j.
  double weight_integral_x(int j) const {
    return face_weights_x[j] * control_len_y(j);
  }
  // Transmissibility of the horizontal face between rows j and j+1 per unit
  // x-length: 1/(z_{j+1}-z_j).
  double trans_y(int j) const {
    return face_weights_y[j] / (y_nodes[j + 1] - y_nodes[j]);
  }

  int index(int i, int j) const { return j * nx() + i; }
};

// Default grading: quasi-uniform spacing of the z variable near y = 0,
// clamped to at least 1.
double default_grading_exponent(double a);

// Exact integral mean of y^a over [y0,y1] (0 <= y0 < y1).
double mean_pow_weight(double a, double y0, double y1);

Grid build_grid(double x_lo, double x_hi, double height, int nx, int ny,
                double grading_exponent, double a);

// Rebuild a grid (and its weights) from explicit node arrays, e.g. when
// loading a field from disk.
Grid grid_from_nodes(std::vector<double> x_nodes, std::vector<double> y_nodes,
                     double a);

}  // namespace fraclap
