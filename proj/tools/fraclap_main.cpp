// Command line driver: one subcommand per scenario, declarative config file,
// CSV artifacts plus a checksum manifest in the output directory.
#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "fraclap/field_io.hpp"
#include "fraclap/scenarios.hpp"

namespace {

enum ExitCode {
  kOk = 0,
  kError = 1,
  kConfigError = 2,
  kSolverError = 3,
  kIoError = 4,
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fraclap: extension-problem laboratory for strongly competing "
               "fractional systems"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  int threads = 0;
  int seed = 0;

  const std::vector<std::pair<std::string, fraclap::Scenario>> subcommands = {
      {"solve", fraclap::Scenario::Solve},
      {"sweep_beta", fraclap::Scenario::SweepBeta},
      {"diagnose", fraclap::Scenario::Diagnose},
      {"exponents", fraclap::Scenario::Exponents},
      {"barrier_check", fraclap::Scenario::BarrierCheck},
  };
  for (const auto& [name, scenario] : subcommands) {
    auto* sub = app.add_subcommand(name, "run the " + name + " scenario");
    sub->add_option("--config", config_path, "run configuration file")
        ->required();
    sub->add_option("--out", out_dir, "output directory (overrides config)");
    sub->add_option("--threads", threads,
                    "solver threads for red-black sweeps (0 = auto)");
    sub->add_option("--seed", seed,
                    "reserved; all algorithms are deterministic");
  }

  CLI11_PARSE(app, argc, argv);

  fraclap::Scenario scenario = fraclap::Scenario::Solve;
  for (const auto& [name, sc] : subcommands)
    if (app.get_subcommand(name)->parsed()) scenario = sc;

  try {
    fraclap::RunConfig cfg = fraclap::parse_config(config_path);
    if (cfg.scenario && *cfg.scenario != scenario) {
      std::fprintf(stderr,
                   "error: config declares scenario %s but subcommand is %s\n",
                   fraclap::scenario_name(*cfg.scenario).c_str(),
                   fraclap::scenario_name(scenario).c_str());
      return kConfigError;
    }
    const std::string dir = out_dir.empty() ? cfg.output_dir : out_dir;
    auto result = fraclap::run_scenario(scenario, cfg, dir, threads);
    for (const auto& name : result.artifacts)
      std::printf("%s/%s\n", dir.c_str(), name.c_str());
    return kOk;
  } catch (const fraclap::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kConfigError;
  } catch (const fraclap::SolverStepError& e) {
    std::fprintf(stderr, "solver error: %s\n", e.what());
    return kSolverError;
  } catch (const fraclap::SolverError& e) {
    std::fprintf(stderr, "solver error: %s\n", e.what());
    return kSolverError;
  } catch (const fraclap::IoError& e) {
    std::fprintf(stderr, "io error: %s\n", e.what());
    return kIoError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kError;
  }
}
