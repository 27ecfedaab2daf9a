#include "qscatter/estimators.hpp"

#include <cmath>
#include <functional>

#include "qscatter/errors.hpp"
#include "qscatter/rng.hpp"

namespace qscatter::corr {

namespace {

constexpr int kBootstrapResamples = 1000;

// Standard error of a statistic over realizations: resample indices with
// replacement, recompute, take the spread. Deterministic in the seed.
double bootstrap_se(int n_rows, std::uint64_t seed,
                    const std::function<double(const std::vector<int> &)>
                        &statistic) {
  rng::Stream stream(seed);
  std::vector<int> idx(n_rows);
  double sum = 0.0, sum_sq = 0.0;
  for (int b = 0; b < kBootstrapResamples; ++b) {
    for (int k = 0; k < n_rows; ++k)
      idx[k] = static_cast<int>(stream.below(n_rows));
    const double s = statistic(idx);
    sum += s;
    sum_sq += s * s;
  }
  const double mean = sum / kBootstrapResamples;
  const double var =
      std::max(0.0, sum_sq / kBootstrapResamples - mean * mean);
  return std::sqrt(var * kBootstrapResamples / (kBootstrapResamples - 1.0));
}

double mean_of(const std::vector<double> &v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / v.size();
}

double sd_of_mean(const std::vector<double> &v) {
  const double m = mean_of(v);
  double acc = 0.0;
  for (double x : v) acc += (x - m) * (x - m);
  return std::sqrt(acc / (v.size() - 1.0) / v.size());
}

} // namespace

CorrelationEstimate cq_direct(const EnsembleRecord &ensemble, int b,
                              int b_prime) {
  const int pair = ensemble.pair_index(b, b_prime);
  if (pair < 0)
    throw std::invalid_argument(
        "cq_direct: pair was not recorded by this ensemble");
  const int n_rows = ensemble.realizations();

  // Per-realization <n_b n_b'>/(<n_b><n_b'>) - 1. Both factors vanish
  // together only when a mode receives no light at all, which makes the
  // correlation undefined rather than small.
  std::vector<double> ratio(n_rows);
  for (int i = 0; i < n_rows; ++i) {
    const auto &row = ensemble.rows[i];
    const double mb = row.trans_means(b);
    const double mbp = row.trans_means(b_prime);
    if (!(mb > 0.0) || !(mbp > 0.0))
      throw PhysicsError("cq_direct: zero mean photon number in an output "
                         "mode; correlation undefined");
    ratio[i] = row.pair_covs[pair] / (mb * mbp);
  }

  CorrelationEstimate out;
  out.value = mean_of(ratio);
  out.realizations_used = n_rows;
  out.estimator_tag = "direct";
  const std::uint64_t seed =
      rng::derive_seed(ensemble.config.master_seed, pair, 0xd13ec7);
  out.std_error = bootstrap_se(n_rows, seed, [&](const std::vector<int> &idx) {
    double s = 0.0;
    for (int i : idx) s += ratio[i];
    return s / idx.size();
  });
  return out;
}

CorrelationEstimate cq_from_total_variance(const EnsembleRecord &ensemble,
                                           double n_mean_in, double t_mean,
                                           transport::Side side) {
  if (!(t_mean > 0.0 && t_mean < 1.0))
    throw PhysicsError("cq_from_total_variance: mean transmission outside "
                       "(0, 1)");
  if (!(n_mean_in > 0.0))
    throw PhysicsError("cq_from_total_variance: need positive input mean");

  const int n_rows = ensemble.realizations();
  const bool transmitted = side == transport::Side::transmitted;
  std::vector<double> totvar(n_rows), tval(n_rows);
  for (int i = 0; i < n_rows; ++i) {
    const auto &row = ensemble.rows[i];
    totvar[i] = transmitted ? row.trans_total_variance
                            : row.refl_total_variance;
    tval[i] = transmitted ? row.total_transmission
                          : 1.0 - row.total_transmission;
  }

  const double denom = t_mean * t_mean * n_mean_in * n_mean_in;
  const double mean_var = mean_of(totvar);

  CorrelationEstimate out;
  out.value = (mean_var - t_mean * n_mean_in) / denom;
  out.realizations_used = n_rows;
  out.estimator_tag = "variance_inverted";

  // Statistical part: spread of the ensemble-mean variance.
  const double se_stat = sd_of_mean(totvar) / denom;

  // Systematic part: the inversion divides by t_mean^2 while the
  // realized second moment <T^2> exceeds it at finite channel number.
  double mean_t = 0.0, mean_t2 = 0.0;
  for (double t : tval) {
    mean_t += t;
    mean_t2 += t * t;
  }
  mean_t /= n_rows;
  mean_t2 /= n_rows;
  double excess_slope = 0.0; // estimate of Var_src - <n_src>
  if (mean_t2 > 0.0)
    excess_slope = (mean_var - mean_t * n_mean_in) / mean_t2;
  const double se_syst =
      std::abs(mean_t2 - t_mean * t_mean) * std::abs(excess_slope) / denom;

  out.std_error = std::hypot(se_stat, se_syst);
  return out;
}

double cq_predicted(double fano_in, double n_mean) {
  if (!(n_mean > 0.0))
    throw PhysicsError("cq_predicted: need positive mean photon number");
  return (fano_in - 1.0) / n_mean;
}

RangeProfile range_profile(const EnsembleRecord &ensemble,
                           const std::vector<int> &separations,
                           int base_mode) {
  if (separations.empty())
    throw std::invalid_argument("range_profile: empty separation list");

  RangeProfile out;
  out.separations = separations;
  for (int sep : separations)
    out.estimates.push_back(cq_direct(ensemble, base_mode, base_mode + sep));

  double worst = 0.0;
  for (std::size_t i = 0; i < out.estimates.size(); ++i)
    for (std::size_t j = i + 1; j < out.estimates.size(); ++j) {
      const double dev =
          std::abs(out.estimates[i].value - out.estimates[j].value);
      const double pooled = std::hypot(out.estimates[i].std_error,
                                       out.estimates[j].std_error);
      // Guard the degenerate zero-spread case (identical estimates).
      const double floor =
          1e-12 * (1.0 + std::abs(out.estimates[i].value));
      worst = std::max(worst, dev / std::max(pooled, floor));
    }
  out.flatness = worst;
  return out;
}

CorrelationEstimate classical_c2(const EnsembleRecord &ensemble) {
  const int n_rows = ensemble.realizations();
  if (n_rows < 100)
    throw PhysicsError("classical_c2: need at least 100 realizations");
  if (ensemble.config.pairs.empty())
    throw std::invalid_argument("classical_c2: no pairs configured");

  const auto &pairs = ensemble.config.pairs;
  const int n_pairs = static_cast<int>(pairs.size());

  // Per-pair columns of per-realization mean intensities.
  std::vector<std::vector<double>> left(n_pairs), right(n_pairs);
  for (int p = 0; p < n_pairs; ++p) {
    left[p].resize(n_rows);
    right[p].resize(n_rows);
    for (int i = 0; i < n_rows; ++i) {
      left[p][i] = ensemble.rows[i].trans_means(pairs[p].first);
      right[p][i] = ensemble.rows[i].trans_means(pairs[p].second);
    }
  }

  const auto statistic = [&](const std::vector<int> &idx) {
    double acc = 0.0;
    for (int p = 0; p < n_pairs; ++p) {
      double sl = 0.0, sr = 0.0, slr = 0.0;
      for (int i : idx) {
        sl += left[p][i];
        sr += right[p][i];
        slr += left[p][i] * right[p][i];
      }
      const int n = static_cast<int>(idx.size());
      sl /= n;
      sr /= n;
      slr /= n;
      if (!(sl > 0.0) || !(sr > 0.0))
        throw PhysicsError("classical_c2: zero-intensity ensemble");
      acc += slr / (sl * sr) - 1.0;
    }
    return acc / n_pairs;
  };

  std::vector<int> all(n_rows);
  for (int i = 0; i < n_rows; ++i) all[i] = i;

  CorrelationEstimate out;
  out.value = statistic(all);
  out.realizations_used = n_rows;
  out.estimator_tag = "classical_c2";
  out.std_error =
      bootstrap_se(n_rows,
                   rng::derive_seed(ensemble.config.master_seed, 0, 0xc1a55),
                   statistic);
  return out;
}

FanoEstimate detected_fano(const EnsembleRecord &ensemble,
                           transport::Side side, double eta) {
  if (!(eta >= 0.0 && eta <= 1.0))
    throw PhysicsError("detected_fano: eta outside [0, 1]");
  const int n_rows = ensemble.realizations();
  const bool transmitted = side == transport::Side::transmitted;

  std::vector<double> means(n_rows), vars(n_rows);
  for (int i = 0; i < n_rows; ++i) {
    const auto &row = ensemble.rows[i];
    const double m =
        transmitted ? row.trans_total_mean : row.refl_total_mean;
    const double v =
        transmitted ? row.trans_total_variance : row.refl_total_variance;
    means[i] = eta * m;
    vars[i] = eta * eta * v + eta * (1.0 - eta) * m;
  }

  const auto statistic = [&](const std::vector<int> &idx) {
    double sm = 0.0, sv = 0.0;
    for (int i : idx) {
      sm += means[i];
      sv += vars[i];
    }
    if (!(sm > 0.0))
      throw PhysicsError("detected_fano: zero mean photon number");
    return sv / sm;
  };

  std::vector<int> all(n_rows);
  for (int i = 0; i < n_rows; ++i) all[i] = i;

  FanoEstimate out;
  out.value = statistic(all);
  const std::uint64_t seed = rng::derive_seed(
      ensemble.config.master_seed, transmitted ? 1 : 2, 0xfa40);
  out.std_error = bootstrap_se(n_rows, seed, statistic);
  return out;
}

} // namespace qscatter::corr
