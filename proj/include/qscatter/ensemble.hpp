#pragma once
#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "qscatter/detection.hpp"
#include "qscatter/medium.hpp"
#include "qscatter/source.hpp"

namespace qscatter::corr {

/// Monte-Carlo ensemble specification: the double average runs exact
/// quantum expectation values over sampled disorder realizations.
struct EnsembleConfig {
  scatter::MediumSpec medium;
  transport::QuantumSourceSpec source;
  std::optional<transport::DetectionSpec> detection;
  int realizations = 0;
  std::uint64_t master_seed = 0;
  int input_mode = 0;
  /// Transmitted-side output mode pairs (b, b') to correlate, b != b'.
  std::vector<std::pair<int, int>> pairs;

  void validate() const;
};

/// Per-realization reduced statistics (all pre-detection).
struct RealizationRecord {
  double total_transmission = 0.0;
  double trans_total_mean = 0.0;
  double trans_total_variance = 0.0;
  double refl_total_mean = 0.0;
  double refl_total_variance = 0.0;
  Eigen::VectorXd trans_means;      // per transmitted mode
  std::vector<double> pair_covs;    // quantum Cov(n_b, n_b') per config pair
};

/// Raw ensemble record. Deterministic for a fixed config: realization i
/// uses a counter-derived seed, so results do not depend on thread count
/// or scheduling.
struct EnsembleRecord {
  EnsembleConfig config;
  double source_n_mean = 0.0;
  double source_fano = 0.0;
  double t_mean_theory = 0.0; // (ell + z_e)/(L + 2 z_e)
  std::vector<RealizationRecord> rows;

  int realizations() const { return static_cast<int>(rows.size()); }
  int pair_index(int b, int b_prime) const;

  double mean_total_transmission() const;
  double mean_square_transmission() const;
};

/// Runs the ensemble, optionally data-parallel over realizations.
EnsembleRecord run_ensemble(const EnsembleConfig &config, int threads = 1);

} // namespace qscatter::corr
