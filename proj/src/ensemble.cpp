#include "qscatter/ensemble.hpp"

#include <atomic>
#include <thread>

#include "qscatter/errors.hpp"
#include "qscatter/rng.hpp"
#include "qscatter/transport.hpp"

namespace qscatter::corr {

void EnsembleConfig::validate() const {
  medium.validate();
  if (realizations < 2)
    throw PhysicsError("ensemble: need at least 2 realizations");
  if (input_mode < 0 || input_mode >= medium.n_channels)
    throw PhysicsError("ensemble: input mode out of range");
  for (const auto &[b, bp] : pairs) {
    if (b < 0 || b >= medium.n_channels || bp < 0 || bp >= medium.n_channels)
      throw PhysicsError("ensemble: pair mode out of range");
    if (b == bp)
      throw PhysicsError("ensemble: pairwise estimates need b != b'");
  }
  if (detection) detection->validate();
}

int EnsembleRecord::pair_index(int b, int b_prime) const {
  for (std::size_t k = 0; k < config.pairs.size(); ++k)
    if ((config.pairs[k].first == b && config.pairs[k].second == b_prime) ||
        (config.pairs[k].first == b_prime && config.pairs[k].second == b))
      return static_cast<int>(k);
  return -1;
}

double EnsembleRecord::mean_total_transmission() const {
  double sum = 0.0;
  for (const auto &row : rows) sum += row.total_transmission;
  return sum / rows.size();
}

double EnsembleRecord::mean_square_transmission() const {
  double sum = 0.0;
  for (const auto &row : rows)
    sum += row.total_transmission * row.total_transmission;
  return sum / rows.size();
}

EnsembleRecord run_ensemble(const EnsembleConfig &config, int threads) {
  config.validate();
  const auto source = transport::source_prepare(config.source);

  EnsembleRecord record;
  record.config = config;
  record.source_n_mean = source.n_mean;
  record.source_fano = source.fano;
  record.t_mean_theory = scatter::mean_transmission(config.medium);
  record.rows.resize(config.realizations);

  const auto run_one = [&](int i) {
    const std::uint64_t seed = rng::derive_seed(config.master_seed, i);
    const auto matrix = scatter::sample_scattering_matrix(config.medium, seed);
    const auto prop = transport::propagate(source.state, matrix,
                                           config.input_mode);
    const auto trans = transport::channel_stats(prop,
                                                transport::Side::transmitted);
    const auto refl = transport::channel_stats(prop,
                                               transport::Side::reflected);

    RealizationRecord row;
    row.total_transmission = prop.total_transmission;
    row.trans_total_mean = trans.total_mean;
    row.trans_total_variance = trans.total_variance;
    row.refl_total_mean = refl.total_mean;
    row.refl_total_variance = refl.total_variance;
    row.trans_means = trans.means;
    row.pair_covs.reserve(config.pairs.size());
    for (const auto &[b, bp] : config.pairs)
      row.pair_covs.push_back(trans.covariance(b, bp));
    record.rows[i] = std::move(row);
  };

  const int workers =
      std::min<int>(std::max(1, threads), config.realizations);
  if (workers == 1) {
    for (int i = 0; i < config.realizations; ++i) run_one(i);
  } else {
    // Each realization writes only its own slot, so the reduction order
    // (and therefore the output) is independent of scheduling.
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (;;) {
          const int i = next.fetch_add(1);
          if (i >= config.realizations) return;
          run_one(i);
        }
      });
    for (auto &t : pool) t.join();
  }
  return record;
}

} // namespace qscatter::corr
