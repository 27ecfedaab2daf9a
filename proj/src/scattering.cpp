#include "qscatter/scattering.hpp"

#include <Eigen/QR>
#include <cmath>

#include "qscatter/errors.hpp"
#include "qscatter/rng.hpp"

namespace qscatter::scatter {

namespace {

using Eigen::MatrixXcd;
using cd = std::complex<double>;

MatrixXcd haar_from_stream(int n, rng::Stream &stream) {
  MatrixXcd ginibre(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      ginibre(i, j) = cd(stream.normal(), stream.normal());
  Eigen::HouseholderQR<MatrixXcd> qr(ginibre);
  MatrixXcd q = qr.householderQ();
  // Fixing the R-diagonal phases makes the distribution exactly Haar.
  const auto diag = qr.matrixQR().diagonal();
  for (int j = 0; j < n; ++j) {
    const double mag = std::abs(diag(j));
    q.col(j) *= mag > 0.0 ? diag(j) / mag : cd(1.0, 0.0);
  }
  return q;
}

} // namespace

double ScatteringMatrix::unitarity_residual() const {
  const int dim = static_cast<int>(s.rows());
  return (s.adjoint() * s - MatrixXcd::Identity(dim, dim))
      .cwiseAbs()
      .maxCoeff();
}

Eigen::MatrixXcd sample_haar_unitary(int n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("sample_haar_unitary: n >= 1");
  rng::Stream stream(seed);
  return haar_from_stream(n, stream);
}

double bimodal_scale(double t_mean) {
  if (!(t_mean > 0.0 && t_mean < 1.0))
    throw PhysicsError("bimodal_scale: mean transmission must lie in (0,1)");
  // tanh(s)/s decreases monotonically from 1 to 0.
  double lo = 1e-12;
  double hi = std::max(4.0, 4.0 / t_mean);
  while (std::tanh(hi) / hi > t_mean) hi *= 2.0;
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (std::tanh(mid) / mid > t_mean)
      lo = mid;
    else
      hi = mid;
    if (hi - lo < 1e-12 * std::max(1.0, hi)) break;
  }
  return 0.5 * (lo + hi);
}

ScatteringMatrix sample_scattering_matrix(const MediumSpec &medium,
                                          std::uint64_t seed) {
  medium.validate();
  if (medium.ell + medium.z_e >= medium.L + 2.0 * medium.z_e)
    throw PhysicsError(
        "sample_scattering_matrix: mean transmission would reach 1");
  const double t_mean = mean_transmission(medium);
  const double s_scale = bimodal_scale(t_mean);
  const int n = medium.n_channels;

  rng::Stream stream(seed);
  const MatrixXcd u = haar_from_stream(n, stream);
  const MatrixXcd u_prime = haar_from_stream(n, stream);
  const MatrixXcd v = haar_from_stream(n, stream);
  const MatrixXcd v_prime = haar_from_stream(n, stream);

  Eigen::VectorXd root_tau(n), root_rho(n);
  for (int k = 0; k < n; ++k) {
    const double x = stream.uniform(0.0, s_scale);
    const double tau = 1.0 / (std::cosh(x) * std::cosh(x));
    root_tau(k) = std::sqrt(tau);
    root_rho(k) = std::sqrt(1.0 - tau);
  }

  ScatteringMatrix out;
  out.s.resize(2 * n, 2 * n);
  out.s.topLeftCorner(n, n) = u * root_rho.asDiagonal() * v;
  out.s.topRightCorner(n, n) = u * root_tau.asDiagonal() * v_prime;
  out.s.bottomLeftCorner(n, n) = u_prime * root_tau.asDiagonal() * v;
  out.s.bottomRightCorner(n, n) = -u_prime * root_rho.asDiagonal() * v_prime;
  return out;
}

} // namespace qscatter::scatter
