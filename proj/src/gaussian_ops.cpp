#include "qscatter/gaussian_ops.hpp"

#include <cmath>
#include <stdexcept>

#include "qscatter/errors.hpp"

namespace qscatter::gauss {

namespace {

void check_mode(const GaussianState &state, int mode, const char *op) {
  if (mode < 0 || mode >= state.num_modes())
    throw std::out_of_range(std::string(op) + ": mode index out of range");
}

} // namespace

GaussianState squeeze(const GaussianState &state, int mode, double r,
                      double theta) {
  check_mode(state, mode, "squeeze");
  if (!std::isfinite(r) || !std::isfinite(theta))
    throw std::invalid_argument("squeeze: non-finite parameter");

  // Symplectic action of exp[(z* a^2 - z a^dag^2)/2], z = r e^{i theta}.
  const double ch = std::cosh(r), sh = std::sinh(r);
  const double ct = std::cos(theta), st = std::sin(theta);
  Eigen::Matrix2d block;
  block << ch - sh * ct, -sh * st, -sh * st, ch + sh * ct;

  GaussianState out = state;
  out.displacement.segment<2>(2 * mode) =
      block * state.displacement.segment<2>(2 * mode);
  out.covariance.middleRows<2>(2 * mode) =
      block * state.covariance.middleRows<2>(2 * mode);
  out.covariance.middleCols<2>(2 * mode) =
      out.covariance.middleCols<2>(2 * mode) * block.transpose();
  out.covariance = 0.5 * (out.covariance + out.covariance.transpose()).eval();
  return out;
}

GaussianState displace(const GaussianState &state, int mode,
                       std::complex<double> alpha) {
  check_mode(state, mode, "displace");
  if (!std::isfinite(alpha.real()) || !std::isfinite(alpha.imag()))
    throw std::invalid_argument("displace: non-finite amplitude");

  GaussianState out = state;
  const double rt2 = std::sqrt(2.0);
  out.displacement(2 * mode) += rt2 * alpha.real();
  out.displacement(2 * mode + 1) += rt2 * alpha.imag();
  return out;
}

Eigen::MatrixXd symplectic_from_unitary(const Eigen::MatrixXcd &unitary) {
  const int m = static_cast<int>(unitary.rows());
  Eigen::MatrixXd ortho(2 * m, 2 * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      const double re = unitary(i, j).real();
      const double im = unitary(i, j).imag();
      ortho(2 * i, 2 * j) = re;
      ortho(2 * i, 2 * j + 1) = -im;
      ortho(2 * i + 1, 2 * j) = im;
      ortho(2 * i + 1, 2 * j + 1) = re;
    }
  return ortho;
}

double unitarity_residual(const Eigen::MatrixXcd &unitary) {
  const int m = static_cast<int>(unitary.rows());
  return (unitary.adjoint() * unitary -
          Eigen::MatrixXcd::Identity(m, m))
      .cwiseAbs()
      .maxCoeff();
}

GaussianState apply_interferometer(const GaussianState &state,
                                   const Eigen::MatrixXcd &unitary) {
  if (unitary.rows() != unitary.cols() ||
      unitary.rows() != state.num_modes())
    throw std::invalid_argument("apply_interferometer: dimension mismatch");
  const double residual = unitarity_residual(unitary);
  if (residual > 1e-10)
    throw PhysicsError("apply_interferometer: matrix is not unitary "
                       "(residual " +
                       std::to_string(residual) + ")");

  const Eigen::MatrixXd ortho = symplectic_from_unitary(unitary);
  GaussianState out;
  out.displacement = ortho * state.displacement;
  out.covariance = ortho * state.covariance * ortho.transpose();
  out.covariance = 0.5 * (out.covariance + out.covariance.transpose()).eval();
  return out;
}

GaussianState apply_loss(const GaussianState &state,
                         const std::vector<int> &modes, double eta) {
  if (!(eta >= 0.0 && eta <= 1.0))
    throw std::invalid_argument("apply_loss: eta must lie in [0, 1]");
  for (int mode : modes) check_mode(state, mode, "apply_loss");

  // sigma -> X sigma X^T + Y with X = sqrt(eta), Y = (1-eta)/2 on lossy
  // quadratures; cross blocks pick up one factor sqrt(eta) per lossy mode.
  const int dim = static_cast<int>(state.displacement.size());
  Eigen::VectorXd scale = Eigen::VectorXd::Ones(dim);
  const double root_eta = std::sqrt(eta);
  for (int mode : modes) {
    scale(2 * mode) = root_eta;
    scale(2 * mode + 1) = root_eta;
  }

  GaussianState out = state;
  out.displacement = scale.asDiagonal() * state.displacement;
  out.covariance = scale.asDiagonal() * state.covariance * scale.asDiagonal();
  for (int mode : modes) {
    out.covariance(2 * mode, 2 * mode) += 0.5 * (1.0 - eta);
    out.covariance(2 * mode + 1, 2 * mode + 1) += 0.5 * (1.0 - eta);
  }
  return out;
}

} // namespace qscatter::gauss
