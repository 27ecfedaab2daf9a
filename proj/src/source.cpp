#include "qscatter/source.hpp"

#include <cmath>
#include <complex>
#include <functional>

#include "qscatter/errors.hpp"
#include "qscatter/gaussian_ops.hpp"
#include "qscatter/photon_moments.hpp"

namespace qscatter::transport {

namespace {

constexpr double kSqueezeCap = 2.0;

// Closed-form moments for squeeze r along x followed by a displacement
// of magnitude alpha on the squeezed (sub) or anti-squeezed (super) axis.
double variance_of(double r, double alpha_sq, bool super_branch) {
  const double sh2 = std::sinh(2.0 * r);
  return alpha_sq * std::exp(super_branch ? 2.0 * r : -2.0 * r) +
         0.5 * sh2 * sh2;
}

double fano_of(double r, double n_mean, bool super_branch) {
  const double s2 = std::sinh(r) * std::sinh(r);
  return variance_of(r, n_mean - s2, super_branch) / n_mean;
}

// First r in [lo, hi] with fano_of(r) == target, assuming f(lo) and
// f(hi) bracket the target.
double bisect_fano(double lo, double hi, double n_mean, double target,
                   bool super_branch) {
  double f_lo = fano_of(lo, n_mean, super_branch) - target;
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = fano_of(mid, n_mean, super_branch) - target;
    if ((f_lo <= 0.0) == (f_mid <= 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
    if (hi - lo < 1e-14) break;
  }
  return 0.5 * (lo + hi);
}

PreparedSource build(double r, double theta_s, double alpha_mag,
                     double theta_d, double eta_pre) {
  gauss::GaussianState state = gauss::vacuum_state(1);
  state = gauss::squeeze(state, 0, r, theta_s);
  state = gauss::displace(state, 0, std::polar(alpha_mag, theta_d));
  if (eta_pre < 1.0) state = gauss::apply_loss(state, {0}, eta_pre);

  const auto moments = gauss::photon_moments(state);
  PreparedSource out;
  out.state = std::move(state);
  out.n_mean = moments.total_mean;
  out.fano = moments.fano_total;
  out.r = r;
  out.alpha_mag = alpha_mag;
  return out;
}

} // namespace

PreparedSource source_prepare(const QuantumSourceSpec &spec) {
  if (!(spec.eta_pre >= 0.0 && spec.eta_pre <= 1.0))
    throw PhysicsError("source_prepare: eta_pre outside [0, 1]");

  if (spec.explicit_form) {
    const auto &e = *spec.explicit_form;
    if (!std::isfinite(e.r) || !std::isfinite(e.theta_s) ||
        !std::isfinite(e.alpha_mag) || !std::isfinite(e.theta_d))
      throw std::invalid_argument("source_prepare: non-finite parameter");
    return build(e.r, e.theta_s, e.alpha_mag, e.theta_d, spec.eta_pre);
  }
  if (!spec.target_form)
    throw std::invalid_argument("source_prepare: empty source spec");

  const double target_f = spec.target_form->fano;
  const double n_mean = spec.target_form->n_mean;
  if (!(n_mean >= 0.0) || !std::isfinite(target_f))
    throw std::invalid_argument("source_prepare: bad target");
  if (n_mean == 0.0) {
    if (std::abs(target_f - 1.0) > 1e-9)
      throw PhysicsError("source_prepare: vacuum target must have F = 1");
    return build(0.0, 0.0, 0.0, 0.0, spec.eta_pre);
  }

  // Poisson target: a plain coherent state.
  if (std::abs(target_f - 1.0) < 1e-12)
    return build(0.0, 0.0, std::sqrt(n_mean), 0.0, spec.eta_pre);

  const bool super_branch = target_f > 1.0;
  const double r_full = std::asinh(std::sqrt(n_mean)); // alpha -> 0 here
  const double r_cap = std::min(kSqueezeCap, r_full);
  double r_solution;

  if (super_branch) {
    // F grows monotonically from 1; bracket against the cap.
    if (fano_of(r_cap, n_mean, true) < target_f)
      throw PhysicsError("source_prepare: target Fano above reachable "
                         "super-Poissonian branch at this mean");
    r_solution = bisect_fano(0.0, r_cap, n_mean, target_f, true);
  } else {
    // F dips below 1 and comes back up; golden-section the minimum,
    // then take the root on the small-r side (brightest displacement).
    double a = 0.0, b = r_cap;
    const double golden = 0.6180339887498949;
    double x1 = b - golden * (b - a), x2 = a + golden * (b - a);
    double f1 = fano_of(x1, n_mean, false), f2 = fano_of(x2, n_mean, false);
    for (int iter = 0; iter < 120; ++iter) {
      if (f1 < f2) {
        b = x2;
        x2 = x1;
        f2 = f1;
        x1 = b - golden * (b - a);
        f1 = fano_of(x1, n_mean, false);
      } else {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + golden * (b - a);
        f2 = fano_of(x2, n_mean, false);
      }
    }
    const double r_min = 0.5 * (a + b);
    if (fano_of(r_min, n_mean, false) > target_f)
      throw PhysicsError("source_prepare: target Fano below the reachable "
                         "sub-Poissonian floor at this mean");
    r_solution = bisect_fano(0.0, r_min, n_mean, target_f, false);
  }

  const double s2 = std::sinh(r_solution) * std::sinh(r_solution);
  const double alpha_mag = std::sqrt(std::max(0.0, n_mean - s2));
  const double theta_d = super_branch ? 1.5707963267948966 : 0.0;
  PreparedSource out = build(r_solution, 0.0, alpha_mag, theta_d, spec.eta_pre);

  if (spec.eta_pre == 1.0 &&
      (std::abs(out.fano - target_f) > 1e-8 ||
       std::abs(out.n_mean - n_mean) > 1e-8 * std::max(1.0, n_mean)))
    throw PhysicsError("source_prepare: target inversion failed to converge");
  return out;
}

} // namespace qscatter::transport
