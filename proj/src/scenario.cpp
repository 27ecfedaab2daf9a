#include "qscatter/scenario.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

#include <nlohmann/json.hpp>

#include "qscatter/errors.hpp"
#include "qscatter/estimators.hpp"
#include "qscatter/rng.hpp"
#include "qscatter/validate.hpp"

namespace qscatter::cli {

namespace {

using nlohmann::json;

void require_known_keys(const json &obj, const std::string &path,
                        std::initializer_list<const char *> allowed) {
  for (const auto &item : obj.items()) {
    bool known = false;
    for (const char *key : allowed)
      if (item.key() == key) {
        known = true;
        break;
      }
    if (!known)
      throw ConfigError("config: unknown key '" + path + item.key() + "'");
  }
}

double get_number(const json &obj, const std::string &path, const char *key) {
  if (!obj.contains(key))
    throw ConfigError("config: missing '" + path + key + "'");
  if (!obj[key].is_number())
    throw ConfigError("config: '" + path + key + "' must be a number");
  return obj[key].get<double>();
}

double get_number_or(const json &obj, const char *key, double fallback) {
  if (!obj.contains(key)) return fallback;
  return obj[key].get<double>();
}

ScenarioKind parse_kind(const std::string &name) {
  if (name == "phase_scan") return ScenarioKind::phase_scan;
  if (name == "thickness_scan") return ScenarioKind::thickness_scan;
  if (name == "power_scan") return ScenarioKind::power_scan;
  if (name == "thickness_independence")
    return ScenarioKind::thickness_independence;
  if (name == "validate") return ScenarioKind::validate;
  throw ConfigError("config: unknown scenario '" + name + "'");
}

std::string format_double(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.12g", value);
  return buffer;
}

struct SweepRow {
  double axis_value = 0.0;
  double t_bar = 0.0;
  double fano_in = 0.0;
  double n_mean_in = 0.0;
  corr::FanoEstimate fano_trans;
  corr::FanoEstimate fano_refl;
  corr::CorrelationEstimate cq_direct;
  corr::CorrelationEstimate cq_var;
  double cq_pred = 0.0;
  int realizations = 0;
};

const char *csv_axis_name(const ScenarioConfig &config) {
  switch (config.kind) {
    case ScenarioKind::phase_scan: return "phase_rad";
    case ScenarioKind::power_scan:
      return config.sweep_axis == "n_mean" ? "n_mean_axis" : "P_W";
    default: return "L_um";
  }
}

void write_csv_header(std::ofstream &out, const ScenarioConfig &config) {
  out << csv_axis_name(config)
      << ",T_bar,F_a_in,n_mean_in,F_T_detected,F_T_err,F_R_detected,"
         "F_R_err,CQ_direct,CQ_direct_err,CQ_var,CQ_var_err,CQ_pred,"
         "realizations\n";
}

void write_csv_row(std::ofstream &out, const SweepRow &row) {
  out << format_double(row.axis_value) << ',' << format_double(row.t_bar)
      << ',' << format_double(row.fano_in) << ','
      << format_double(row.n_mean_in) << ','
      << format_double(row.fano_trans.value) << ','
      << format_double(row.fano_trans.std_error) << ','
      << format_double(row.fano_refl.value) << ','
      << format_double(row.fano_refl.std_error) << ','
      << format_double(row.cq_direct.value) << ','
      << format_double(row.cq_direct.std_error) << ','
      << format_double(row.cq_var.value) << ','
      << format_double(row.cq_var.std_error) << ','
      << format_double(row.cq_pred) << ',' << row.realizations << '\n';
}

} // namespace

std::string version_string() { return "qscatter 0.1.0"; }

ScenarioConfig parse_scenario_json(const std::string &text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error &err) {
    throw ConfigError(std::string("config: JSON parse error: ") + err.what());
  }
  if (!root.is_object()) throw ConfigError("config: top level must be an object");

  require_known_keys(root, "",
                     {"scenario", "medium", "source", "detection", "sweep",
                      "realizations", "master_seed", "input_mode",
                      "separations", "threads", "output_dir"});

  ScenarioConfig config;
  config.config_echo = root.dump(2);
  if (!root.contains("scenario"))
    throw ConfigError("config: missing 'scenario'");
  config.kind = parse_kind(root["scenario"].get<std::string>());

  if (config.kind == ScenarioKind::validate) {
    config.master_seed = static_cast<std::uint64_t>(
        get_number_or(root, "master_seed", 1.0));
    config.threads = static_cast<int>(get_number_or(root, "threads", 0.0));
    if (root.contains("output_dir"))
      config.output_dir = root["output_dir"].get<std::string>();
    return config;
  }

  if (!root.contains("medium")) throw ConfigError("config: missing 'medium'");
  const json &medium = root["medium"];
  require_known_keys(medium, "medium.",
                     {"ell_um", "L_um", "z_e_um", "n_channels"});
  config.medium.ell = get_number(medium, "medium.", "ell_um");
  config.medium.L = get_number(medium, "medium.", "L_um");
  config.medium.z_e = get_number_or(medium, "z_e_um", 0.0);
  config.medium.n_channels =
      static_cast<int>(get_number(medium, "medium.", "n_channels"));

  if (!root.contains("source")) throw ConfigError("config: missing 'source'");
  const json &source = root["source"];
  require_known_keys(source, "source.", {"explicit", "target", "eta_pre"});
  if (source.contains("explicit") == source.contains("target"))
    throw ConfigError(
        "config: source needs exactly one of 'explicit' or 'target'");
  if (source.contains("explicit")) {
    const json &e = source["explicit"];
    require_known_keys(e, "source.explicit.",
                       {"r", "theta_s", "alpha_mag", "theta_d"});
    config.source = transport::QuantumSourceSpec::make_explicit(
        get_number(e, "source.explicit.", "r"),
        get_number_or(e, "theta_s", 0.0),
        get_number(e, "source.explicit.", "alpha_mag"),
        get_number_or(e, "theta_d", 0.0));
  } else {
    const json &t = source["target"];
    require_known_keys(t, "source.target.", {"F_a", "n_mean"});
    config.source = transport::QuantumSourceSpec::make_target(
        get_number(t, "source.target.", "F_a"),
        get_number(t, "source.target.", "n_mean"));
  }
  config.source.eta_pre = get_number_or(source, "eta_pre", 1.0);

  if (root.contains("detection")) {
    const json &det = root["detection"];
    require_known_keys(det, "detection.",
                       {"eta", "wavelength_m", "power_W",
                        "resolution_bandwidth_Hz"});
    transport::DetectionSpec spec;
    spec.eta = get_number(det, "detection.", "eta");
    spec.wavelength = get_number_or(det, "wavelength_m", 1064e-9);
    spec.power = get_number_or(det, "power_W", 0.0);
    spec.resolution_bandwidth =
        get_number_or(det, "resolution_bandwidth_Hz", 300e3);
    config.detection = spec;
  }

  if (!root.contains("sweep")) throw ConfigError("config: missing 'sweep'");
  const json &sweep = root["sweep"];
  require_known_keys(sweep, "sweep.", {"axis", "values"});
  if (!sweep.contains("axis") || !sweep.contains("values"))
    throw ConfigError("config: sweep needs 'axis' and 'values'");
  config.sweep_axis = sweep["axis"].get<std::string>();
  for (const auto &v : sweep["values"]) {
    if (!v.is_number())
      throw ConfigError("config: sweep.values must be numbers");
    config.sweep_values.push_back(v.get<double>());
  }
  if (config.sweep_values.empty())
    throw ConfigError("config: sweep.values must be non-empty");
  for (std::size_t i = 1; i < config.sweep_values.size(); ++i) {
    const bool increasing = config.sweep_values[1] > config.sweep_values[0];
    const double prev = config.sweep_values[i - 1];
    const double cur = config.sweep_values[i];
    if (increasing ? cur <= prev : cur >= prev)
      throw ConfigError("config: sweep.values must be strictly monotone");
  }

  const char *expected_axis = nullptr;
  switch (config.kind) {
    case ScenarioKind::phase_scan: expected_axis = "phase_rad"; break;
    case ScenarioKind::thickness_scan:
    case ScenarioKind::thickness_independence: expected_axis = "L_um"; break;
    case ScenarioKind::power_scan: expected_axis = nullptr; break;
    case ScenarioKind::validate: break;
  }
  if (expected_axis && config.sweep_axis != expected_axis)
    throw ConfigError(std::string("config: this scenario sweeps '") +
                      expected_axis + "'");
  if (config.kind == ScenarioKind::power_scan &&
      config.sweep_axis != "power_W" && config.sweep_axis != "n_mean")
    throw ConfigError("config: power_scan sweeps 'power_W' or 'n_mean'");
  if (config.kind == ScenarioKind::phase_scan && !config.source.explicit_form)
    throw ConfigError("config: phase_scan needs an explicit source");
  if (config.kind == ScenarioKind::power_scan && !config.source.target_form)
    throw ConfigError(
        "config: power_scan needs a target source (fixed Fano factor)");

  if (!root.contains("realizations"))
    throw ConfigError("config: missing 'realizations'");
  config.realizations = static_cast<int>(root["realizations"].get<double>());
  config.master_seed =
      static_cast<std::uint64_t>(get_number_or(root, "master_seed", 1.0));
  config.input_mode = static_cast<int>(get_number_or(root, "input_mode", 0.0));
  if (root.contains("separations")) {
    for (const auto &v : root["separations"])
      config.separations.push_back(v.get<int>());
  } else {
    const int n = config.medium.n_channels;
    config.separations = {1, std::max(1, n / 4), std::max(1, n / 2 - 1)};
  }
  config.threads = static_cast<int>(get_number_or(root, "threads", 0.0));
  if (root.contains("output_dir"))
    config.output_dir = root["output_dir"].get<std::string>();
  return config;
}

ScenarioConfig parse_scenario_file(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw ConfigError("config: cannot open '" + path + "'");
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return parse_scenario_json(text);
}

namespace {

SweepRow evaluate_point(const ScenarioConfig &config, double axis_value,
                        int point_index, int threads) {
  corr::EnsembleConfig run;
  run.medium = config.medium;
  run.source = config.source;
  run.detection = config.detection;
  run.realizations = config.realizations;
  run.master_seed = rng::derive_seed(config.master_seed, point_index, 0x5eed);
  run.input_mode = config.input_mode;
  const int base = 0;
  for (int sep : config.separations)
    run.pairs.emplace_back(base, base + sep);

  switch (config.kind) {
    case ScenarioKind::phase_scan:
      run.source.explicit_form->theta_d = axis_value;
      break;
    case ScenarioKind::thickness_scan:
    case ScenarioKind::thickness_independence:
      run.medium.L = axis_value;
      break;
    case ScenarioKind::power_scan: {
      double n_mean = axis_value;
      if (config.sweep_axis == "power_W") {
        if (!config.detection)
          throw ConfigError("config: power_W sweep needs a detection block");
        transport::DetectionSpec det = *config.detection;
        det.power = axis_value;
        n_mean = transport::photons_per_mode(det);
      }
      run.source.target_form->n_mean = n_mean;
      break;
    }
    case ScenarioKind::validate: break;
  }

  const auto ensemble = corr::run_ensemble(run, threads);

  SweepRow row;
  row.axis_value = axis_value;
  row.t_bar = ensemble.t_mean_theory;
  row.fano_in = ensemble.source_fano;
  row.n_mean_in = ensemble.source_n_mean;
  row.realizations = ensemble.realizations();
  const double eta = config.detection ? config.detection->eta : 1.0;
  row.fano_trans =
      corr::detected_fano(ensemble, transport::Side::transmitted, eta);
  row.fano_refl =
      corr::detected_fano(ensemble, transport::Side::reflected, eta);
  row.cq_direct = corr::cq_direct(ensemble, run.pairs.front().first,
                                  run.pairs.front().second);
  row.cq_var = corr::cq_from_total_variance(ensemble, ensemble.source_n_mean,
                                            ensemble.t_mean_theory);
  row.cq_pred =
      corr::cq_predicted(ensemble.source_fano, ensemble.source_n_mean);
  return row;
}

int run_validate_scenario(const ScenarioConfig &config, int threads) {
  const auto report =
      fock::run_equivalence_suite(200, config.master_seed, threads);
  std::cout << "oracle equivalence: " << report.circuits_run - report.failures
            << " passed, " << report.failures << " failed, "
            << report.circuits_skipped
            << " skipped (max deviation " << report.max_deviation << ")\n";
  for (const auto &note : report.failure_notes)
    std::cout << "  FAIL " << note << "\n";
  return report.failures == 0 ? kExitOk : kExitValidationFailure;
}

} // namespace

void run_scenario(const ScenarioConfig &config,
                  const ScenarioOverrides &overrides) {
  ScenarioConfig effective = config;
  if (overrides.seed) effective.master_seed = *overrides.seed;
  if (overrides.threads) effective.threads = *overrides.threads;
  if (overrides.out_dir) effective.output_dir = *overrides.out_dir;
  int threads = effective.threads;
  if (threads <= 0)
    threads = static_cast<int>(
        std::max(1u, std::thread::hardware_concurrency()));

  if (effective.kind == ScenarioKind::validate) {
    const int status = run_validate_scenario(effective, threads);
    if (status != kExitOk)
      throw PhysicsError("validate: oracle equivalence suite failed");
    return;
  }

  namespace fs = std::filesystem;
  fs::create_directories(effective.output_dir);
  const char *names[] = {"phase_scan", "thickness_scan", "power_scan",
                         "thickness_independence", "validate"};
  const std::string name = names[static_cast<int>(effective.kind)];
  const fs::path csv_path = fs::path(effective.output_dir) / (name + ".csv");
  const fs::path manifest_path =
      fs::path(effective.output_dir) / "manifest.json";

  std::ofstream csv(csv_path);
  if (!csv)
    throw ConfigError("cannot write to '" + csv_path.string() + "'");
  write_csv_header(csv, effective);

  json manifest;
  manifest["version"] = version_string();
  manifest["scenario"] = name;
  manifest["master_seed"] = effective.master_seed;
  manifest["threads"] = threads;
  manifest["config"] = json::parse(effective.config_echo.empty()
                                       ? std::string("{}")
                                       : effective.config_echo);
  manifest["points"] = json::array();

  const auto t_start = std::chrono::steady_clock::now();
  for (std::size_t k = 0; k < effective.sweep_values.size(); ++k) {
    const double axis_value = effective.sweep_values[k];
    const auto p_start = std::chrono::steady_clock::now();
    try {
      const SweepRow row = evaluate_point(effective, axis_value,
                                          static_cast<int>(k), threads);
      write_csv_row(csv, row);
    } catch (const std::exception &err) {
      // Flush what we have and mark the failing sweep point.
      csv << "FAILED," << format_double(axis_value) << ",\"" << err.what()
          << "\"\n";
      csv.flush();
      manifest["failed_point"] = axis_value;
      manifest["error"] = err.what();
      std::ofstream mout(manifest_path);
      mout << manifest.dump(2) << "\n";
      throw;
    }
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                      p_start)
            .count();
    manifest["points"].push_back(
        {{"axis_value", axis_value}, {"wall_time_s", wall}});
  }
  csv.flush();

  manifest["total_wall_time_s"] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start)
          .count();
  std::ofstream mout(manifest_path);
  mout << manifest.dump(2) << "\n";
}

} // namespace qscatter::cli
