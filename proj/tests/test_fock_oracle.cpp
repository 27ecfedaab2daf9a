#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qscatter/errors.hpp"
#include "qscatter/fock_oracle.hpp"
#include "qscatter/validate.hpp"

using namespace qscatter;
using fock::CircuitDescription;

TEST_CASE("vacuum circuit") {
  CircuitDescription circuit;
  circuit.num_modes = 2;
  circuit.cutoff = 10;
  const auto result = fock::oracle_photon_moments(circuit);
  CHECK(result.leakage == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(result.moments.total_mean == doctest::Approx(0.0));
  CHECK(result.moments.total_variance == doctest::Approx(0.0));
}

TEST_CASE("coherent state is Poissonian") {
  CircuitDescription circuit;
  circuit.num_modes = 1;
  circuit.cutoff = 30;
  circuit.ops.push_back(fock::DisplaceOp{0, {1.0, 0.0}});
  const auto result = fock::oracle_photon_moments(circuit);
  CHECK(result.moments.total_mean == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(result.moments.total_variance == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("squeezed vacuum mean photon number") {
  CircuitDescription circuit;
  circuit.num_modes = 1;
  circuit.cutoff = 40;
  circuit.ops.push_back(fock::SqueezeOp{0, 0.5, 0.0});
  const auto result = fock::oracle_photon_moments(circuit);
  const double expected = std::sinh(0.5) * std::sinh(0.5);
  CHECK(result.moments.total_mean ==
        doctest::Approx(expected).epsilon(1e-8));
  const double expected_var = std::sinh(1.0) * std::sinh(1.0) / 2.0;
  CHECK(result.moments.total_variance ==
        doctest::Approx(expected_var).epsilon(1e-8));
}

TEST_CASE("50:50 splitter of a coherent state") {
  CircuitDescription circuit;
  circuit.num_modes = 2;
  circuit.cutoff = 25;
  circuit.ops.push_back(fock::DisplaceOp{0, {1.2, 0.0}});
  Eigen::MatrixXcd u(2, 2);
  const double s = 1.0 / std::sqrt(2.0);
  u << s, s, s, -s;
  circuit.ops.push_back(fock::InterferometerOp{u});
  const auto result = fock::oracle_photon_moments(circuit);
  CHECK(result.moments.means(0) == doctest::Approx(0.72).epsilon(1e-9));
  CHECK(result.moments.means(1) == doctest::Approx(0.72).epsilon(1e-9));
  CHECK(result.moments.covariance(0, 1) ==
        doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("loss through a vacuum ancilla matches the Fano law") {
  CircuitDescription circuit;
  circuit.num_modes = 1;
  circuit.cutoff = 35;
  circuit.ops.push_back(fock::SqueezeOp{0, 0.4, 0.0});
  circuit.ops.push_back(fock::DisplaceOp{0, {1.4, 0.0}});
  const auto before = fock::oracle_photon_moments(circuit);

  circuit.ops.push_back(fock::LossOp{0, 0.37});
  const auto after = fock::oracle_photon_moments(circuit);

  CHECK(after.moments.total_mean ==
        doctest::Approx(0.37 * before.moments.total_mean).epsilon(1e-8));
  const double expected_fano =
      1.0 + 0.37 * (before.moments.fano_total - 1.0);
  CHECK(after.moments.fano_total ==
        doctest::Approx(expected_fano).epsilon(1e-8));
}

TEST_CASE("commuting operations on disjoint modes can be reordered") {
  CircuitDescription ab;
  ab.num_modes = 2;
  ab.cutoff = 30;
  ab.ops.push_back(fock::SqueezeOp{0, 0.5, 0.7});
  ab.ops.push_back(fock::DisplaceOp{1, {0.9, 0.4}});

  CircuitDescription ba = ab;
  std::swap(ba.ops[0], ba.ops[1]);

  const auto first = fock::oracle_photon_moments(ab);
  const auto second = fock::oracle_photon_moments(ba);
  CHECK((first.moments.means - second.moments.means).cwiseAbs().maxCoeff() <
        1e-12);
  CHECK((first.moments.number_covariance - second.moments.number_covariance)
            .cwiseAbs()
            .maxCoeff() < 1e-12);
}

TEST_CASE("doubling the cutoff leaves accepted results unchanged") {
  CircuitDescription circuit;
  circuit.num_modes = 1;
  circuit.cutoff = 20;
  circuit.ops.push_back(fock::SqueezeOp{0, 0.45, 0.3});
  circuit.ops.push_back(fock::DisplaceOp{0, {1.0, -0.5}});
  const auto coarse = fock::oracle_photon_moments(circuit);
  circuit.cutoff = 40;
  const auto fine = fock::oracle_photon_moments(circuit);
  CHECK(std::abs(coarse.moments.total_mean - fine.moments.total_mean) < 1e-8);
  CHECK(std::abs(coarse.moments.total_variance -
                 fine.moments.total_variance) < 1e-8);
}

TEST_CASE("excessive truncation is refused with a diagnostic") {
  CircuitDescription circuit;
  circuit.num_modes = 1;
  circuit.cutoff = 10;
  circuit.ops.push_back(fock::SqueezeOp{0, 1.4, 0.0});
  circuit.ops.push_back(fock::DisplaceOp{0, {2.5, 0.0}});
  CHECK_THROWS_WITH_AS(fock::oracle_photon_moments(circuit),
                       doctest::Contains("increase cutoff"), PhysicsError);
}

TEST_CASE("oracle agrees with the covariance algebra on random circuits") {
  const auto report = fock::run_equivalence_suite(25, 20240811, 2);
  CHECK(report.circuits_run == 25);
  CHECK(report.failures == 0);
  CHECK(report.max_deviation < 1e-6);
}
