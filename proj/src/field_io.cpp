#include "fraclap/field_io.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "fraclap/csv.hpp"

namespace fraclap {

namespace {

constexpr const char* kMagic = "FRACLAP";
constexpr const char* kVersion = "v1";

double parse_double(const std::string& tok, const std::string& what) {
  char* end = nullptr;
  const double v = std::strtod(tok.c_str(), &end);
  if (end == tok.c_str() || *end != '\0')
    throw IoError("field file: bad " + what + " token '" + tok + "'");
  return v;
}

std::vector<double> parse_row(std::istream& in, size_t n,
                              const std::string& what) {
  std::vector<double> out;
  out.reserve(n);
  std::string tok;
  for (size_t i = 0; i < n; ++i) {
    if (!(in >> tok)) throw IoError("field file: truncated " + what);
    out.push_back(parse_double(tok, what));
  }
  return out;
}

}  // namespace

void save_field(const Field& field, const std::string& path) {
  const Grid& g = field.grid;
  const ProblemParams& pp = field.params;
  std::ostringstream out;
  out << kMagic << ' ' << kVersion << '\n';
  out << pp.k << ' ' << format_double(pp.s) << ' ' << format_double(pp.p)
      << ' ' << format_double(pp.q) << ' ' << format_double(pp.beta) << '\n';
  out << g.nx() << ' ' << g.ny() << '\n';
  for (int i = 0; i < g.nx(); ++i) {
    if (i) out << ' ';
    out << format_double(g.x_nodes[i]);
  }
  out << '\n';
  for (int j = 0; j < g.ny(); ++j) {
    if (j) out << ' ';
    out << format_double(g.y_nodes[j]);
  }
  out << '\n';
  for (int c = 0; c < pp.k; ++c)
    for (int j = 0; j < g.ny(); ++j) {
      for (int i = 0; i < g.nx(); ++i) {
        if (i) out << ' ';
        out << format_double(field.values[c][g.index(i, j)]);
      }
      out << '\n';
    }
  write_file(path, out.str());
}

Field load_field(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open field file: " + path);
  std::string magic, version;
  if (!(in >> magic >> version) || magic != kMagic)
    throw IoError("field file: missing FRACLAP header");
  if (version != kVersion)
    throw IoError("field file: unknown version '" + version +
                  "' (supported: v1)");
  int k = 0, nx = 0, ny = 0;
  std::string tok;
  if (!(in >> k)) throw IoError("field file: bad k");
  const double s = parse_double((in >> tok, tok), "s");
  const double p = parse_double((in >> tok, tok), "p");
  const double q = parse_double((in >> tok, tok), "q");
  const double beta = parse_double((in >> tok, tok), "beta");
  if (!(in >> nx >> ny)) throw IoError("field file: bad grid sizes");
  if (k < 1 || nx < 3 || ny < 3)
    throw IoError("field file: invalid header sizes");

  ProblemParams params = ProblemParams::make(s, k, p, q, beta);
  auto x_nodes = parse_row(in, nx, "x_nodes");
  auto y_nodes = parse_row(in, ny, "y_nodes");
  Grid grid = grid_from_nodes(std::move(x_nodes), std::move(y_nodes),
                              params.a);
  Field field = Field::zeros(params, grid);
  for (int c = 0; c < k; ++c)
    field.values[c] = parse_row(in, size_t(nx) * ny, "values");
  std::string extra;
  if (in >> extra)
    throw IoError("field file: trailing data (k mismatch vs header?)");
  return field;
}

}  // namespace fraclap
