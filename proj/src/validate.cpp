#include "qscatter/validate.hpp"

#include <atomic>
#include <cmath>
#include <thread>

#include "qscatter/errors.hpp"
#include "qscatter/rng.hpp"
#include "qscatter/scattering.hpp"

namespace qscatter::fock {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

double moment_deviation(const gauss::PhotonMoments &a,
                        const gauss::PhotonMoments &b) {
  double dev = (a.means - b.means).cwiseAbs().maxCoeff();
  dev = std::max(dev, (a.number_covariance - b.number_covariance)
                          .cwiseAbs()
                          .maxCoeff());
  return dev;
}

} // namespace

CircuitDescription random_circuit(std::uint64_t seed) {
  rng::Stream stream(seed);
  CircuitDescription circuit;
  circuit.num_modes = 1 + static_cast<int>(stream.below(3));
  circuit.cutoff = 40;

  const int n_ops = 2 + static_cast<int>(stream.below(5));
  // Budgets keep the truncated basis faithful: total squeezing and total
  // displacement within the validated parameter range.
  double squeeze_budget = 0.8;
  double displace_budget = 1.5;
  int loss_budget = circuit.num_modes >= 3 ? 1 : 2;
  int interferometer_budget = 2;

  for (int k = 0; k < n_ops; ++k) {
    const int mode = static_cast<int>(stream.below(circuit.num_modes));
    switch (stream.below(4)) {
      case 0: {
        const double r = stream.uniform(0.0, squeeze_budget);
        squeeze_budget -= r;
        circuit.ops.push_back(
            SqueezeOp{mode, r, stream.uniform(0.0, kTwoPi)});
        break;
      }
      case 1: {
        const double mag = stream.uniform(0.0, displace_budget);
        displace_budget -= mag;
        circuit.ops.push_back(DisplaceOp{
            mode, std::polar(mag, stream.uniform(0.0, kTwoPi))});
        break;
      }
      case 2: {
        if (interferometer_budget == 0) break;
        --interferometer_budget;
        circuit.ops.push_back(InterferometerOp{scatter::sample_haar_unitary(
            circuit.num_modes, stream.next_u64())});
        break;
      }
      case 3: {
        if (loss_budget == 0) break;
        --loss_budget;
        circuit.ops.push_back(LossOp{mode, stream.uniform(0.2, 1.0)});
        break;
      }
    }
  }
  if (circuit.ops.empty())
    circuit.ops.push_back(DisplaceOp{0, {0.5, 0.0}});
  return circuit;
}

EquivalenceReport run_equivalence_suite(int n_circuits, std::uint64_t seed,
                                        int threads, double tolerance) {
  EquivalenceReport report;
  report.tolerance = tolerance;

  struct Outcome {
    bool accepted = false;
    bool failed = false;
    double deviation = 0.0;
    std::string note;
  };

  int accepted_total = 0;
  std::uint64_t batch_base = 0;
  while (accepted_total < n_circuits) {
    // Oversized deterministic batch; results are merged in index order so
    // the accepted set is independent of thread scheduling.
    const int want = n_circuits - accepted_total;
    const int batch = want + want / 8 + 4;
    std::vector<Outcome> outcomes(batch);

    const auto run_one = [&](int k) {
      const std::uint64_t circuit_seed =
          rng::derive_seed(seed, batch_base + k, 0x0e1f);
      const CircuitDescription circuit = random_circuit(circuit_seed);
      Outcome &out = outcomes[k];
      try {
        const OracleResult brute = oracle_photon_moments(circuit);
        const auto gaussian = gaussian_circuit_moments(circuit);
        out.accepted = true;
        out.deviation = moment_deviation(brute.moments, gaussian);
        if (out.deviation > tolerance) {
          out.failed = true;
          out.note = "circuit seed " + std::to_string(circuit_seed) +
                     ": deviation " + std::to_string(out.deviation);
        }
      } catch (const PhysicsError &) {
        out.accepted = false; // truncation refusal; skip
      }
    };

    const int workers = std::max(1, std::min(threads, batch));
    if (workers == 1) {
      for (int k = 0; k < batch; ++k) run_one(k);
    } else {
      std::atomic<int> next{0};
      std::vector<std::thread> pool;
      for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
          for (;;) {
            const int k = next.fetch_add(1);
            if (k >= batch) return;
            run_one(k);
          }
        });
      for (auto &t : pool) t.join();
    }

    for (int k = 0; k < batch && accepted_total < n_circuits; ++k) {
      if (!outcomes[k].accepted) {
        ++report.circuits_skipped;
        continue;
      }
      ++accepted_total;
      ++report.circuits_run;
      report.max_deviation =
          std::max(report.max_deviation, outcomes[k].deviation);
      if (outcomes[k].failed) {
        ++report.failures;
        report.failure_notes.push_back(outcomes[k].note);
      }
    }
    batch_base += batch;
  }
  return report;
}

} // namespace qscatter::fock
