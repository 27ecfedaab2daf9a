#pragma once
#include <optional>

#include "qscatter/gaussian_state.hpp"

namespace qscatter::transport {

/// Single-mode squeezed-plus-displaced source, specified either by the
/// physical knobs (squeeze r along axis theta_s, displacement magnitude
/// and phase) or by target photon statistics (Fano factor and mean).
struct ExplicitSource {
  double r = 0.0;
  double theta_s = 0.0;
  double alpha_mag = 0.0;
  double theta_d = 0.0;
};

struct TargetSource {
  double fano = 1.0;
  double n_mean = 0.0;
};

struct QuantumSourceSpec {
  std::optional<ExplicitSource> explicit_form;
  std::optional<TargetSource> target_form;
  double eta_pre = 1.0; // optional pre-sample efficiency

  static QuantumSourceSpec make_explicit(double r, double theta_s,
                                         double alpha_mag, double theta_d) {
    QuantumSourceSpec spec;
    spec.explicit_form = ExplicitSource{r, theta_s, alpha_mag, theta_d};
    return spec;
  }
  static QuantumSourceSpec make_target(double fano, double n_mean) {
    QuantumSourceSpec spec;
    spec.target_form = TargetSource{fano, n_mean};
    return spec;
  }
};

struct PreparedSource {
  gauss::GaussianState state; // single mode
  double fano = 1.0;
  double n_mean = 0.0;
  double r = 0.0;         // squeeze parameter actually used
  double alpha_mag = 0.0; // displacement actually used
};

/// Builds the source state. The explicit form applies squeeze followed
/// by displacement; the target form inverts the closed-form moments
/// (displacement on the squeezed axis for F < 1, on the anti-squeezed
/// axis for F > 1) to 1e-10 and rejects infeasible targets (squeeze
/// capped at r = 2).
PreparedSource source_prepare(const QuantumSourceSpec &spec);

} // namespace qscatter::transport
