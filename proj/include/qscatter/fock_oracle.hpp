#pragma once
#include <Eigen/Dense>
#include <complex>
#include <variant>
#include <vector>

#include "qscatter/photon_moments.hpp"

namespace qscatter::fock {

struct SqueezeOp {
  int mode;
  double r;
  double theta;
};

struct DisplaceOp {
  int mode;
  std::complex<double> alpha;
};

struct InterferometerOp {
  Eigen::MatrixXcd unitary; // num_modes x num_modes
};

struct LossOp {
  int mode;
  double eta;
};

using PrimitiveOp =
    std::variant<SqueezeOp, DisplaceOp, InterferometerOp, LossOp>;

/// Small circuit built from Gaussian primitives, evaluated by direct
/// matrix mechanics in a photon-number basis truncated at `cutoff`
/// photons per mode. Meant for verification, not for scale: at most
/// 3 modes, and each loss appends one vacuum ancilla of the same
/// dimension (so a 3-mode circuit can afford a single loss).
struct CircuitDescription {
  int num_modes = 1;
  int cutoff = 40; // max photon number per mode
  std::vector<PrimitiveOp> ops;
};

struct OracleResult {
  gauss::PhotonMoments moments;
  double leakage = 0.0; // 1 - total state norm after all ops
};

/// Brute-force photon moments of the circuit over its system modes.
/// Loss is realized with an explicit vacuum ancilla and an implicit
/// partial trace (ancilla modes are simply not measured). Refuses with
/// a diagnostic if the truncation leakage reaches 1e-8.
OracleResult oracle_photon_moments(const CircuitDescription &circuit);

/// Same circuit evaluated through the Gaussian covariance algebra;
/// counterpart used by the equivalence suite.
gauss::PhotonMoments gaussian_circuit_moments(const CircuitDescription &circuit);

} // namespace qscatter::fock
