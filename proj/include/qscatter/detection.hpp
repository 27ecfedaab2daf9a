#pragma once
#include "qscatter/photon_moments.hpp"

namespace qscatter::transport {

/// Detection chain parameters.
struct DetectionSpec {
  double eta = 1.0;                    // overall efficiency in [0, 1]
  double wavelength = 1064e-9;         // m
  double power = 0.0;                  // W
  double resolution_bandwidth = 300e3; // Hz

  void validate() const;
};

/// Mean photons per detection mode, n = P lambda / (h c B): the photons
/// collected in one inverse-resolution-bandwidth interval.
double photons_per_mode(const DetectionSpec &detection);

/// Uniform detection efficiency applied to recorded photon statistics:
/// means scale by eta, cross covariances by eta^2, and each variance
/// picks up the binomial partition term eta(1-eta) mean.
gauss::PhotonMoments apply_detection(const gauss::PhotonMoments &stats,
                                     double eta);

/// Fano factor after a transmissivity-eta loss: 1 + eta (F - 1).
inline double fano_after_loss(double fano, double eta) {
  return 1.0 + eta * (fano - 1.0);
}

/// Fano factor at the sample exit inferred from a detected value.
inline double fano_undo_detection(double fano_detected, double eta) {
  return 1.0 + (fano_detected - 1.0) / eta;
}

} // namespace qscatter::transport
