#include "qscatter/gaussian_state.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <stdexcept>

namespace qscatter::gauss {

GaussianState vacuum_state(int num_modes) {
  if (num_modes < 1)
    throw std::invalid_argument("vacuum_state: need at least one mode");
  GaussianState state;
  state.displacement = Eigen::VectorXd::Zero(2 * num_modes);
  state.covariance =
      0.5 * Eigen::MatrixXd::Identity(2 * num_modes, 2 * num_modes);
  return state;
}

double symmetry_residual(const GaussianState &state) {
  return (state.covariance - state.covariance.transpose())
      .cwiseAbs()
      .maxCoeff();
}

std::vector<double> symplectic_eigenvalues(const GaussianState &state) {
  const int dim = static_cast<int>(state.covariance.rows());
  // Symplectic spectrum = |eigenvalues| of Omega * sigma, which come in
  // +-i nu pairs for symmetric positive sigma.
  Eigen::MatrixXd omega_sigma = Eigen::MatrixXd::Zero(dim, dim);
  for (int m = 0; m < dim / 2; ++m) {
    omega_sigma.row(2 * m) = state.covariance.row(2 * m + 1);
    omega_sigma.row(2 * m + 1) = -state.covariance.row(2 * m);
  }
  Eigen::EigenSolver<Eigen::MatrixXd> solver(omega_sigma, false);
  std::vector<double> magnitudes(dim);
  for (int k = 0; k < dim; ++k)
    magnitudes[k] = std::abs(solver.eigenvalues()(k));
  std::sort(magnitudes.begin(), magnitudes.end(), std::greater<>());
  // Keep one representative of each +-pair.
  std::vector<double> nus(dim / 2);
  for (int m = 0; m < dim / 2; ++m)
    nus[m] = 0.5 * (magnitudes[2 * m] + magnitudes[2 * m + 1]);
  return nus;
}

double min_symplectic_eigenvalue(const GaussianState &state) {
  const auto nus = symplectic_eigenvalues(state);
  return *std::min_element(nus.begin(), nus.end());
}

} // namespace qscatter::gauss
