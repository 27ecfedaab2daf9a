#pragma once
#include <string>
#include <vector>

#include "qscatter/ensemble.hpp"
#include "qscatter/transport.hpp"

namespace qscatter::corr {

struct CorrelationEstimate {
  double value = 0.0;
  double std_error = 0.0;
  int realizations_used = 0;
  std::string estimator_tag;
};

/// Spatial quantum correlation between two transmitted output modes,
/// estimated from the disorder average of the per-realization normalized
/// cross-correlation <n_b n_b'> / (<n_b><n_b'>) - 1. Normalizing inside
/// each realization keeps the classical speckle correlation (measured
/// separately by classical_c2) out of the estimate; for one illuminated
/// input channel the expected value is (F_a - 1)/<n_a>. Uncertainty from
/// a 1000-resample bootstrap over realizations.
CorrelationEstimate cq_direct(const EnsembleRecord &ensemble, int b,
                              int b_prime);

/// Same correlation recovered by inverting the total-variance relation
///   mean total variance = T <n> + T^2 <n>^2 C
/// on the chosen side (pass the matching mean transmission or mean
/// reflection). The normalization uses the supplied ensemble-mean
/// transmission squared; the measured spread of T_a around it (the
/// mesoscopic total-transmission fluctuation) is not corrected for and
/// enters the reported std_error as a systematic term.
CorrelationEstimate cq_from_total_variance(const EnsembleRecord &ensemble,
                                           double n_mean_in, double t_mean,
                                           transport::Side side =
                                               transport::Side::transmitted);

/// Diffusive-limit prediction (F_a - 1) / n_mean.
double cq_predicted(double fano_in, double n_mean);

struct RangeProfile {
  std::vector<int> separations;
  std::vector<CorrelationEstimate> estimates;
  /// max pairwise deviation over pooled std_error (0 when degenerate).
  double flatness = 0.0;
};

/// cq_direct at output pairs (base, base + separation).
RangeProfile range_profile(const EnsembleRecord &ensemble,
                           const std::vector<int> &separations,
                           int base_mode = 0);

/// Classical speckle cross-correlation: normalized covariance, over
/// disorder, of the per-realization mean intensities of two output
/// modes, averaged over the configured pairs. Scales like 1/(N T).
CorrelationEstimate classical_c2(const EnsembleRecord &ensemble);

/// Detected Fano factor of one side's total photon number,
/// mean-of-variances over mean-of-means, with bootstrap error.
struct FanoEstimate {
  double value = 0.0;
  double std_error = 0.0;
};
FanoEstimate detected_fano(const EnsembleRecord &ensemble,
                           transport::Side side, double eta);

} // namespace qscatter::corr
