#include "fraclap/field.hpp"

#include <cmath>
#include <stdexcept>

namespace fraclap {

Field Field::zeros(const ProblemParams& params, const Grid& grid) {
  Field f;
  f.params = params;
  f.grid = grid;
  f.values.assign(params.k,
                  std::vector<double>(size_t(grid.nx()) * grid.ny(), 0.0));
  return f;
}

Field Field::constant(const ProblemParams& params, const Grid& grid,
                      double c) {
  Field f = zeros(params, grid);
  for (auto& comp : f.values)
    for (auto& v : comp) v = c;
  return f;
}

std::vector<double> Field::trace(int c) const {
  const int nx = grid.nx();
  std::vector<double> u(nx);
  for (int i = 0; i < nx; ++i) u[i] = values[c][grid.index(i, 0)];
  return u;
}

void Field::validate() const {
  params.validate();
  if (values.size() != static_cast<size_t>(params.k))
    throw std::invalid_argument("Field: component count mismatch");
  const size_t n = size_t(grid.nx()) * grid.ny();
  if (std::fabs(params.a - grid.a) > 1e-14)
    throw std::invalid_argument("Field: params.a != grid.a");
  for (const auto& comp : values) {
    if (comp.size() != n)
      throw std::invalid_argument("Field: value array size mismatch");
    for (double v : comp) {
      if (!std::isfinite(v)) throw std::invalid_argument("Field: non-finite value");
      if (v < 0.0) throw std::invalid_argument("Field: negative value");
    }
  }
}

}  // namespace fraclap
