#pragma once
#include "qscatter/gaussian_state.hpp"
#include "qscatter/photon_moments.hpp"
#include "qscatter/scattering.hpp"

namespace qscatter::transport {

enum class Side { transmitted, reflected };

/// Output of one propagation: the full 2N-mode state plus the source
/// bookkeeping needed to reduce per-side statistics.
struct PropagationResult {
  gauss::GaussianState state; // 2N output modes
  int input_mode = 0;
  double source_mean = 0.0;
  double source_variance = 0.0;
  double total_transmission = 0.0; // realized T_a of the input mode
};

/// Sends a single-mode source into input channel `input_mode` (all other
/// inputs vacuum) through one scattering realization. Total mean photon
/// number is conserved.
PropagationResult propagate(const gauss::GaussianState &source,
                            const scatter::ScatteringMatrix &matrix,
                            int input_mode);

/// Photon statistics of the N output modes on one side. For a single
/// illuminated input mode the totals obey
///   total_variance = T^2 Var_src + T (1 - T) <n_src>
/// with T the realized transmission (reflection) of the input mode.
gauss::PhotonMoments channel_stats(const PropagationResult &propagated,
                                   Side side);

} // namespace qscatter::transport
