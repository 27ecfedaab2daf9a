#include "qscatter/medium.hpp"

#include <algorithm>
#include <cmath>

#include "qscatter/errors.hpp"

namespace qscatter::scatter {

void MediumSpec::validate() const {
  if (!(ell > 0.0)) throw PhysicsError("medium: ell must be positive");
  if (!(z_e >= 0.0)) throw PhysicsError("medium: z_e must be non-negative");
  if (!(L >= ell))
    throw PhysicsError("medium: thickness below one mean free path");
  if (n_channels < 1) throw PhysicsError("medium: need at least one channel");
}

bool MediumSpec::paper_regime(double lambda_um) const {
  const double two_pi = 6.283185307179586;
  return lambda_um / two_pi < ell && 10.0 * ell <= L;
}

double mean_transmission(const MediumSpec &medium) {
  medium.validate();
  const double t = (medium.ell + medium.z_e) / (medium.L + 2.0 * medium.z_e);
  return std::clamp(t, 1e-12, 1.0 - 1e-12);
}

double scattering_event_count(const MediumSpec &medium) {
  medium.validate();
  const double ratio = (medium.L + 2.0 * medium.z_e) / medium.ell;
  return ratio * ratio;
}

} // namespace qscatter::scatter
