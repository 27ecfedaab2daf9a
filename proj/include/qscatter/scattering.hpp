#pragma once
#include <Eigen/Dense>
#include <cstdint>

#include "qscatter/medium.hpp"

namespace qscatter::scatter {

/// One disorder realization: unitary 2N x 2N mode-coupling matrix with
/// reflection/transmission blocks
///   S = [ r  t' ]
///       [ t  r' ]
/// acting on (left inputs 0..N-1, right inputs N..2N-1).
struct ScatteringMatrix {
  Eigen::MatrixXcd s;

  int n_channels() const { return static_cast<int>(s.rows()) / 2; }
  auto r() const { return s.topLeftCorner(n_channels(), n_channels()); }
  auto t() const { return s.bottomLeftCorner(n_channels(), n_channels()); }
  auto t_prime() const { return s.topRightCorner(n_channels(), n_channels()); }
  auto r_prime() const {
    return s.bottomRightCorner(n_channels(), n_channels());
  }

  /// Total transmission of left input mode a: sum_b |t_ba|^2.
  double total_transmission(int input_mode) const {
    return t().col(input_mode).squaredNorm();
  }

  /// max |S^dag S - I|.
  double unitarity_residual() const;
};

/// Haar-distributed N x N unitary (Ginibre + QR with phase fix).
/// Deterministic in (N, seed).
Eigen::MatrixXcd sample_haar_unitary(int n, std::uint64_t seed);

/// Scale s of the bimodal transmission-eigenvalue law tau = sech^2(x),
/// x uniform on [0, s], fixed by tanh(s)/s = t_mean (bisection, 1e-12).
/// Rejects t_mean outside (0, 1).
double bimodal_scale(double t_mean);

/// One diffusive-slab realization: polar construction
/// S = diag(u, u') Sigma(tau) diag(v, v') with independent Haar factors
/// and tau drawn from the bimodal law calibrated to mean_transmission.
/// Deterministic in (medium, seed).
ScatteringMatrix sample_scattering_matrix(const MediumSpec &medium,
                                          std::uint64_t seed);

} // namespace qscatter::scatter
