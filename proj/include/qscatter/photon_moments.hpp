#pragma once
#include <Eigen/Dense>
#include <vector>

#include "qscatter/gaussian_state.hpp"

namespace qscatter::gauss {

/// Photon-number statistics of a set of detection modes: per-mode means,
/// the full number covariance among them, and totals for the set.
struct PhotonMoments {
  std::vector<int> mode_ids;
  Eigen::VectorXd means;             // photons per detection mode
  Eigen::MatrixXd number_covariance; // photons^2
  double total_mean = 0.0;
  double total_variance = 0.0;
  double fano_total = 0.0; // total_variance / total_mean; NaN if mean is 0

  double mean(int local) const { return means(local); }
  double covariance(int local_i, int local_j) const {
    return number_covariance(local_i, local_j);
  }
};

/// Exact photon-number moments of a Gaussian state over a mode subset.
///
/// Closed form from the Wick expansion of quartic quadrature products:
///   <n_i>        = (tr sigma_ii - 1)/2 + |d_i|^2/2
///   Cov(n_i,n_j) = d_i^T sigma_ij d_j + ||sigma_ij||_F^2 / 2 - delta_ij/4
/// where sigma_ij is the 2x2 quadrature block between modes i and j and
/// d_i the mode displacement.
PhotonMoments photon_moments(const GaussianState &state,
                             const std::vector<int> &mode_subset);

/// Moments over all modes of the state.
PhotonMoments photon_moments(const GaussianState &state);

} // namespace qscatter::gauss
