// Scenario-driven front end for the multiple-scattering simulator.
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "qscatter/errors.hpp"
#include "qscatter/scenario.hpp"
#include "qscatter/validate.hpp"

int main(int argc, char **argv) {
  CLI::App app{"qscatter: quantum correlations of multiply scattered light"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  std::optional<std::string> out_dir;

  CLI::App *run = app.add_subcommand("run", "execute a scenario config");
  run->add_option("--config", config_path, "scenario JSON file")->required();
  run->add_option("--seed", [&](const CLI::results_t &r) {
    seed = std::stoull(r[0]);
    return true;
  }, "override the master seed");
  run->add_option("--threads", [&](const CLI::results_t &r) {
    threads = std::stoi(r[0]);
    return true;
  }, "worker thread count");
  run->add_option("--out-dir", [&](const CLI::results_t &r) {
    out_dir = r[0];
    return true;
  }, "output directory");

  int validate_circuits = 200;
  std::uint64_t validate_seed = 1;
  int validate_threads = 0;
  CLI::App *validate =
      app.add_subcommand("validate", "run the brute-force equivalence suite");
  validate->add_option("--circuits", validate_circuits, "number of circuits");
  validate->add_option("--seed", validate_seed, "suite seed");
  validate->add_option("--threads", validate_threads, "worker thread count");

  CLI11_PARSE(app, argc, argv);

  using namespace qscatter;
  try {
    if (run->parsed()) {
      const cli::ScenarioConfig config =
          cli::parse_scenario_file(config_path);
      cli::ScenarioOverrides overrides;
      overrides.seed = seed;
      overrides.threads = threads;
      overrides.out_dir = out_dir;
      cli::run_scenario(config, overrides);
      return cli::kExitOk;
    }
    if (validate->parsed()) {
      const int workers = validate_threads > 0 ? validate_threads : 2;
      const auto report = fock::run_equivalence_suite(validate_circuits,
                                                      validate_seed, workers);
      std::cout << "oracle equivalence: "
                << report.circuits_run - report.failures << " passed, "
                << report.failures << " failed, " << report.circuits_skipped
                << " skipped (max deviation " << report.max_deviation
                << ")\n";
      for (const auto &note : report.failure_notes)
        std::cout << "  FAIL " << note << "\n";
      return report.failures == 0 ? cli::kExitOk
                                  : cli::kExitValidationFailure;
    }
  } catch (const ConfigError &err) {
    std::cerr << "error: " << err.what() << "\n";
    return cli::kExitConfigError;
  } catch (const PhysicsError &err) {
    std::cerr << "error: " << err.what() << "\n";
    return cli::kExitPhysicsError;
  } catch (const std::exception &err) {
    std::cerr << "error: " << err.what() << "\n";
    return cli::kExitPhysicsError;
  }
  return cli::kExitOk;
}
