#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "qscatter/fock_oracle.hpp"

namespace qscatter::fock {

struct EquivalenceReport {
  int circuits_run = 0;
  int circuits_skipped = 0; // refused by the oracle (truncation leakage)
  int failures = 0;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  std::vector<std::string> failure_notes;
};

/// Deterministic randomized circuit for the equivalence suite: up to 3
/// modes, squeezing/displacement budgets within the oracle's validated
/// range, at most one loss on 3-mode circuits (ancilla memory).
CircuitDescription random_circuit(std::uint64_t seed);

/// Runs `n_circuits` accepted random circuits through both the Gaussian
/// covariance algebra and the brute-force photon-number oracle and
/// compares every mean and number-covariance entry.
EquivalenceReport run_equivalence_suite(int n_circuits, std::uint64_t seed,
                                        int threads = 1,
                                        double tolerance = 1e-6);

} // namespace qscatter::fock
