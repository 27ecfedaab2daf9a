#include "qscatter/detection.hpp"

#include <cmath>
#include <limits>

#include "qscatter/errors.hpp"

namespace qscatter::transport {

void DetectionSpec::validate() const {
  if (!(eta >= 0.0 && eta <= 1.0))
    throw PhysicsError("detection: eta outside [0, 1]");
  if (!(wavelength > 0.0) || !(resolution_bandwidth > 0.0) || !(power >= 0.0))
    throw PhysicsError("detection: non-positive parameter");
}

double photons_per_mode(const DetectionSpec &detection) {
  detection.validate();
  constexpr double planck = 6.62607015e-34; // J s
  constexpr double light_speed = 299792458.0; // m / s
  return detection.power * detection.wavelength /
         (planck * light_speed * detection.resolution_bandwidth);
}

gauss::PhotonMoments apply_detection(const gauss::PhotonMoments &stats,
                                     double eta) {
  if (!(eta >= 0.0 && eta <= 1.0))
    throw PhysicsError("apply_detection: eta outside [0, 1]");

  gauss::PhotonMoments out = stats;
  out.means *= eta;
  out.number_covariance *= eta * eta;
  for (int i = 0; i < out.means.size(); ++i)
    out.number_covariance(i, i) += eta * (1.0 - eta) * stats.means(i);
  out.total_mean = eta * stats.total_mean;
  out.total_variance =
      eta * eta * stats.total_variance + eta * (1.0 - eta) * stats.total_mean;
  out.fano_total = out.total_mean > 0.0
                       ? out.total_variance / out.total_mean
                       : std::numeric_limits<double>::quiet_NaN();
  return out;
}

} // namespace qscatter::transport
