#include "qscatter/photon_moments.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace qscatter::gauss {

PhotonMoments photon_moments(const GaussianState &state,
                             const std::vector<int> &mode_subset) {
  if (mode_subset.empty())
    throw std::invalid_argument("photon_moments: empty mode subset");
  for (int mode : mode_subset)
    if (mode < 0 || mode >= state.num_modes())
      throw std::out_of_range("photon_moments: mode index out of range");

  const int n = static_cast<int>(mode_subset.size());
  PhotonMoments out;
  out.mode_ids = mode_subset;
  out.means.resize(n);
  out.number_covariance.resize(n, n);

  for (int i = 0; i < n; ++i) {
    const int mi = mode_subset[i];
    const Eigen::Matrix2d sii = state.mode_block(mi, mi);
    const Eigen::Vector2d di = state.mode_displacement(mi);
    double mean = 0.5 * (sii.trace() - 1.0) + 0.5 * di.squaredNorm();
    if (mean < 0.0 && mean > -1e-12) mean = 0.0; // round-off guard
    out.means(i) = mean;

    for (int j = 0; j <= i; ++j) {
      const int mj = mode_subset[j];
      const Eigen::Matrix2d sij = state.mode_block(mi, mj);
      const Eigen::Vector2d dj = state.mode_displacement(mj);
      double cov = di.dot(sij * dj) + 0.5 * sij.squaredNorm();
      if (i == j) {
        cov -= 0.25;
        if (cov < 0.0 && cov > -1e-12) cov = 0.0;
      }
      out.number_covariance(i, j) = cov;
      out.number_covariance(j, i) = cov;
    }
  }

  out.total_mean = out.means.sum();
  out.total_variance = out.number_covariance.sum();
  out.fano_total = out.total_mean > 0.0
                       ? out.total_variance / out.total_mean
                       : std::numeric_limits<double>::quiet_NaN();
  return out;
}

PhotonMoments photon_moments(const GaussianState &state) {
  std::vector<int> all(state.num_modes());
  std::iota(all.begin(), all.end(), 0);
  return photon_moments(state, all);
}

} // namespace qscatter::gauss
