#pragma once
#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "qscatter/gaussian_state.hpp"

namespace qscatter::gauss {

/// Single-mode squeezing with parameter r and axis angle theta.
/// theta = 0 squeezes the x quadrature: Var(x) -> e^{-2r}/2 on vacuum.
GaussianState squeeze(const GaussianState &state, int mode, double r,
                      double theta);

/// Displace one mode by a complex amplitude (covariance unchanged).
GaussianState displace(const GaussianState &state, int mode,
                       std::complex<double> alpha);

/// Passive linear-optical transform a_out = U a_in for a complex M x M
/// unitary U. Rejects U with unitarity residual above 1e-10; conserves
/// the total mean photon number.
GaussianState apply_interferometer(const GaussianState &state,
                                   const Eigen::MatrixXcd &unitary);

/// Pure-loss channel of transmissivity eta on the listed modes
/// (equivalent to mixing each with vacuum on an eta beamsplitter and
/// discarding the ancilla). Single-mode Fano maps as F -> 1 + eta(F-1).
GaussianState apply_loss(const GaussianState &state,
                         const std::vector<int> &modes, double eta);

/// Orthogonal symplectic embedding of a complex unitary in the
/// interleaved quadrature ordering: 2x2 blocks [[Re, -Im], [Im, Re]].
Eigen::MatrixXd symplectic_from_unitary(const Eigen::MatrixXcd &unitary);

/// max |U^dag U - I|.
double unitarity_residual(const Eigen::MatrixXcd &unitary);

} // namespace qscatter::gauss
