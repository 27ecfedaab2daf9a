#pragma once
#include <optional>
#include <string>
#include <vector>

#include "qscatter/ensemble.hpp"

namespace qscatter::cli {

enum class ScenarioKind {
  phase_scan,
  thickness_scan,
  power_scan,
  thickness_independence,
  validate,
};

/// Parsed and validated scenario configuration. The JSON schema uses
/// blocks medium/source/detection/sweep; unknown keys anywhere are hard
/// errors so a typo cannot silently corrupt a sweep.
struct ScenarioConfig {
  ScenarioKind kind = ScenarioKind::thickness_scan;
  scatter::MediumSpec medium;
  transport::QuantumSourceSpec source;
  std::optional<transport::DetectionSpec> detection;
  std::string sweep_axis;
  std::vector<double> sweep_values;
  int realizations = 0;
  std::uint64_t master_seed = 1;
  int input_mode = 0;
  std::vector<int> separations; // defaults to {1, N/4, N/2-1}
  int threads = 0;              // 0 = hardware default
  std::string output_dir = "out";
  std::string config_echo; // original JSON text for the manifest
};

ScenarioConfig parse_scenario_file(const std::string &path);
ScenarioConfig parse_scenario_json(const std::string &text);

struct ScenarioOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  std::optional<std::string> out_dir;
};

/// Executes the scenario: one CSV (`<scenario>.csv`) plus a JSON run
/// manifest in the output directory. CSV bodies are byte-identical for
/// identical config and seed regardless of thread count; wall-clock data
/// lives only in the manifest. On a physics failure at a sweep point the
/// completed rows plus a FAILED marker row are flushed before the error
/// propagates.
void run_scenario(const ScenarioConfig &config,
                  const ScenarioOverrides &overrides = {});

/// Exit-code mapping used by the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitPhysicsError = 3;
inline constexpr int kExitValidationFailure = 4;

std::string version_string();

} // namespace qscatter::cli
