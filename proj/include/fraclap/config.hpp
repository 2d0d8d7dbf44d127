// Flat [section] key=value run configuration.  Parsing errors carry the line
// number and field name; scenario execution lives in scenarios.hpp.
#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fraclap/continuation.hpp"
#include "fraclap/solver.hpp"

namespace fraclap {

enum class Scenario { Solve, SweepBeta, Diagnose, Exponents, BarrierCheck };

std::string scenario_name(Scenario s);
std::optional<Scenario> scenario_from_name(const std::string& name);

struct ConfigError : std::runtime_error {
  int line;
  std::string field;
  ConfigError(int line, const std::string& field, const std::string& msg);
};

enum class BoundaryPreset { Constant, MirrorCrossing, CustomSamples };

struct RunConfig {
  std::optional<Scenario> scenario;  // optional; CLI subcommand decides

  ProblemParams params;
  // Grid block.
  double x_lo = -1.0, x_hi = 1.0, height = 1.0;
  int nx = 129, ny = 65;
  double grading = 0.0;  // 0 = default grading for the given a

  BoundaryPreset preset = BoundaryPreset::Constant;
  double amplitude = 1.0;
  std::string samples_file;

  SolverConfig solver;
  BetaLadder ladder;

  // Diagnostics block.
  std::vector<std::string> diagnostics;  // which blocks to emit
  std::string field_file;                // input for DIAGNOSE
  double center_x = 0.0;
  std::vector<double> radii{0.04, 0.06, 0.09, 0.14, 0.2, 0.3};
  double holder_alpha = 0.5;
  double morrey_eps = 0.25;
  double acf_mu = 1.0;
  double fb_threshold = 0.0;  // 0 = default from solver tolerance

  // Exponents block.
  std::vector<double> s_grid{0.25, 0.5, 0.75};
  int resolution = 1024;

  // Barrier block.
  std::vector<double> barrier_M{10, 100, 1000};
  std::vector<double> barrier_p{0.5, 1, 2};
  std::vector<double> barrier_s{0.25, 0.5, 0.75};
  double barrier_delta = 0.0;
  int barrier_nx = 161;
  int barrier_ny = 61;

  std::string output_dir = "out";
};

RunConfig parse_config(const std::string& path);
RunConfig parse_config_text(const std::string& text, const std::string& name);

}  // namespace fraclap
