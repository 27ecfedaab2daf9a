#include "qscatter/transport.hpp"

#include <numeric>
#include <stdexcept>

#include "qscatter/gaussian_ops.hpp"

namespace qscatter::transport {

PropagationResult propagate(const gauss::GaussianState &source,
                            const scatter::ScatteringMatrix &matrix,
                            int input_mode) {
  if (source.num_modes() != 1)
    throw std::invalid_argument("propagate: source must be single-mode");
  const int n = matrix.n_channels();
  if (input_mode < 0 || input_mode >= n)
    throw std::out_of_range("propagate: input mode out of range");

  // Embed the source at the chosen left input, everything else vacuum.
  gauss::GaussianState in = gauss::vacuum_state(2 * n);
  in.displacement.segment<2>(2 * input_mode) = source.displacement;
  in.covariance.block<2, 2>(2 * input_mode, 2 * input_mode) =
      source.covariance;

  const auto source_moments = gauss::photon_moments(source);

  PropagationResult out;
  out.state = gauss::apply_interferometer(in, matrix.s);
  out.input_mode = input_mode;
  out.source_mean = source_moments.total_mean;
  out.source_variance = source_moments.total_variance;
  out.total_transmission = matrix.total_transmission(input_mode);
  return out;
}

gauss::PhotonMoments channel_stats(const PropagationResult &propagated,
                                   Side side) {
  const int n = propagated.state.num_modes() / 2;
  std::vector<int> modes(n);
  const int offset = side == Side::transmitted ? n : 0;
  std::iota(modes.begin(), modes.end(), offset);
  return gauss::photon_moments(propagated.state, modes);
}

} // namespace qscatter::transport
