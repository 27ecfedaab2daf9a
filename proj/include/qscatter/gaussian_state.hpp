#pragma once
#include <Eigen/Dense>
#include <vector>

namespace qscatter::gauss {

/// Multimode Gaussian state of light in quadrature representation.
///
/// Conventions (hbar = 1): quadratures x = (a + a^dag)/sqrt(2),
/// p = (a - a^dag)/(i sqrt(2)), interleaved ordering x1,p1,...,xM,pM.
/// Vacuum has zero displacement and covariance I/2. Displacing by a
/// complex amplitude alpha shifts (x,p) by (sqrt(2) Re a, sqrt(2) Im a).
///
/// States are immutable values: every operation returns a new state, so
/// they are safe to share across threads.
struct GaussianState {
  Eigen::VectorXd displacement; // length 2M
  Eigen::MatrixXd covariance;   // 2M x 2M, symmetric

  int num_modes() const { return static_cast<int>(displacement.size()) / 2; }

  Eigen::Vector2d mode_displacement(int mode) const {
    return displacement.segment<2>(2 * mode);
  }
  Eigen::Matrix2d mode_block(int i, int j) const {
    return covariance.block<2, 2>(2 * i, 2 * j);
  }
};

/// M-mode vacuum: zero displacement, covariance I/2. Rejects M = 0.
GaussianState vacuum_state(int num_modes);

/// Largest symmetry violation max|sigma - sigma^T|.
double symmetry_residual(const GaussianState &state);

/// Symplectic eigenvalues of the covariance matrix, descending.
/// All >= 1/2 for physical states, all == 1/2 for pure states.
std::vector<double> symplectic_eigenvalues(const GaussianState &state);

/// Smallest symplectic eigenvalue (uncertainty-principle witness).
double min_symplectic_eigenvalue(const GaussianState &state);

} // namespace qscatter::gauss
