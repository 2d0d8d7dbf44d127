#pragma once

#include <vector>

#include "fraclap/grid.hpp"
#include "fraclap/params.hpp"

namespace fraclap {

// k-component nonnegative grid function (the extension densities v_i).
// values[c][j*nx+i] is component c at node (x_i, y_j).
struct Field {
  ProblemParams params;
  Grid grid;
  std::vector<std::vector<double>> values;

  static Field zeros(const ProblemParams& params, const Grid& grid);
  static Field constant(const ProblemParams& params, const Grid& grid,
                        double c);

  double at(int c, int i, int j) const { return values[c][grid.index(i, j)]; }
  double& at(int c, int i, int j) { return values[c][grid.index(i, j)]; }

  // Trace u_c(x_i) = v_c(x_i, 0).
  std::vector<double> trace(int c) const;

  // Throws std::invalid_argument if a value is negative/non-finite or the
  // shapes are inconsistent.
  void validate() const;
};

}  // namespace fraclap
