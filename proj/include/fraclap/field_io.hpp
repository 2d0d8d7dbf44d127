// Plain-text field persistence.  Layout:
//   FRACLAP v1
//   k s p q beta
//   nx ny
//   x_nodes...
//   y_nodes...
//   ny*nx values per component, row-major, one y-row per line,
//   components concatenated.
// Doubles are printed with 17 significant digits, so load(save(F)) is
// bitwise exact on the values.
#pragma once

#include <stdexcept>
#include <string>

#include "fraclap/field.hpp"

namespace fraclap {

struct IoError : std::runtime_error {
  explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

void save_field(const Field& field, const std::string& path);
Field load_field(const std::string& path);

}  // namespace fraclap
