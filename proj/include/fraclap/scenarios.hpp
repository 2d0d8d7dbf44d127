// Orchestration of the five run scenarios; emits the CSV artifacts and the
// checksum manifest into the output directory.
#pragma once

#include <string>
#include <vector>

#include "fraclap/config.hpp"

namespace fraclap {

struct RunResult {
  std::vector<std::string> artifacts;  // file names relative to out_dir
};

// Throws ConfigError / SolverStepError / IoError on failure.
RunResult run_scenario(Scenario scenario, const RunConfig& cfg,
                       const std::string& out_dir, int threads);

// Helpers shared with tests.
Grid grid_from_config(const RunConfig& cfg);
BoundaryData boundary_from_config(const RunConfig& cfg, const Grid& grid);

}  // namespace fraclap
