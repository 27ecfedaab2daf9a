#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "qscatter/errors.hpp"
#include "qscatter/gaussian_ops.hpp"
#include "qscatter/photon_moments.hpp"
#include "qscatter/rng.hpp"
#include "qscatter/scattering.hpp"

using namespace qscatter;
using gauss::GaussianState;

namespace {

// Reference values from the closed-form moments of squeezed/displaced
// states; each is independently cross-checked against the brute-force
// photon-number oracle in test_fock_oracle.
constexpr double kSqueezedHalfMean = 0.27154031740762189;  // sinh^2(0.5)
constexpr double kSqueezedHalfVar = 0.69054892277090786;   // sinh^2(1)/2
constexpr double kSqueezedHalfFano = 2.5430806348152438;   // 2 cosh^2(0.5)
constexpr double kSqueezedHalfXVar = 0.18393972058572116;  // e^{-1}/2
constexpr double kChainMean = 9.1275845028154715;  // 9 + sinh^2(0.35)
constexpr double kChainVar = 4.7569923504709708;   // 9e^{-0.7}+sinh^2(.7)/2
constexpr double kChainFano = 0.52116661850719005;
constexpr double kSplitCov = -1.0926480380861252;  // (Var - mean)/4
constexpr double kSplitCorr = -0.052460032700339310;

Eigen::MatrixXcd splitter_50_50() {
  Eigen::MatrixXcd u(2, 2);
  const double s = 1.0 / std::sqrt(2.0);
  u << s, s, s, -s;
  return u;
}

GaussianState chain_state() {
  auto state = gauss::vacuum_state(1);
  state = gauss::squeeze(state, 0, 0.35, 0.0);
  state = gauss::displace(state, 0, {3.0, 0.0});
  return state;
}

} // namespace

TEST_CASE("vacuum state") {
  const auto vac = gauss::vacuum_state(3);
  CHECK(vac.num_modes() == 3);
  CHECK(vac.displacement.norm() == 0.0);
  CHECK((vac.covariance - 0.5 * Eigen::MatrixXd::Identity(6, 6)).norm() ==
        0.0);

  const auto moments = gauss::photon_moments(gauss::vacuum_state(2));
  CHECK(moments.total_mean == 0.0);
  CHECK(moments.total_variance == 0.0);

  CHECK_THROWS_AS(gauss::vacuum_state(0), std::invalid_argument);
}

TEST_CASE("squeezed vacuum closed forms") {
  auto state = gauss::vacuum_state(1);

  SUBCASE("r = 0 is the identity") {
    const auto same = gauss::squeeze(state, 0, 0.0, 1.3);
    CHECK((same.covariance - state.covariance).norm() == doctest::Approx(0.0));
  }

  state = gauss::squeeze(state, 0, 0.5, 0.0);
  CHECK(state.covariance(0, 0) == doctest::Approx(kSqueezedHalfXVar).epsilon(1e-12));
  const auto moments = gauss::photon_moments(state);
  CHECK(moments.total_mean == doctest::Approx(kSqueezedHalfMean).epsilon(1e-12));
  CHECK(moments.total_variance == doctest::Approx(kSqueezedHalfVar).epsilon(1e-12));
  CHECK(moments.fano_total == doctest::Approx(kSqueezedHalfFano).epsilon(1e-12));

  CHECK_THROWS(gauss::squeeze(state, 0, std::nan(""), 0.0));
  CHECK_THROWS(gauss::squeeze(state, 2, 0.1, 0.0));
}

TEST_CASE("coherent displacement") {
  auto state = gauss::vacuum_state(1);
  SUBCASE("alpha = 0 is the identity") {
    const auto same = gauss::displace(state, 0, {0.0, 0.0});
    CHECK(same.displacement.norm() == 0.0);
  }

  state = gauss::displace(state, 0, {2.0, 0.0});
  const auto moments = gauss::photon_moments(state);
  CHECK(moments.total_mean == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(moments.total_variance == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(moments.fano_total == doctest::Approx(1.0).epsilon(1e-12));

  const auto m15 = gauss::photon_moments(
      gauss::displace(gauss::vacuum_state(1), 0, {1.5, 0.0}));
  CHECK(m15.total_mean == doctest::Approx(2.25).epsilon(1e-12));
  CHECK(m15.total_variance == doctest::Approx(2.25).epsilon(1e-12));
}

TEST_CASE("squeeze-displace chain hits the sub-Poissonian reference") {
  const auto moments = gauss::photon_moments(chain_state());
  CHECK(moments.total_mean == doctest::Approx(kChainMean).epsilon(1e-12));
  CHECK(moments.total_variance == doctest::Approx(kChainVar).epsilon(1e-12));
  CHECK(moments.fano_total == doctest::Approx(kChainFano).epsilon(1e-12));
}

TEST_CASE("interferometer") {
  SUBCASE("identity leaves the state alone") {
    const auto state = chain_state();
    const auto out = gauss::apply_interferometer(
        state, Eigen::MatrixXcd::Identity(1, 1));
    CHECK((out.covariance - state.covariance).norm() ==
          doctest::Approx(0.0).epsilon(1e-14));
  }

  SUBCASE("50:50 splitter on a coherent state gives independent outputs") {
    auto state = gauss::vacuum_state(2);
    state = gauss::displace(state, 0, {2.0, 0.0});
    const auto out = gauss::apply_interferometer(state, splitter_50_50());
    const auto moments = gauss::photon_moments(out);
    CHECK(moments.means(0) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(moments.means(1) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(moments.covariance(0, 1) == doctest::Approx(0.0).epsilon(1e-12));
  }

  SUBCASE("50:50 splitter two-mode correlation instance") {
    auto state = gauss::vacuum_state(2);
    state = gauss::squeeze(state, 0, 0.35, 0.0);
    state = gauss::displace(state, 0, {3.0, 0.0});
    const auto out = gauss::apply_interferometer(state, splitter_50_50());
    const auto moments = gauss::photon_moments(out);
    CHECK(moments.covariance(0, 1) == doctest::Approx(kSplitCov).epsilon(1e-10));
    const double corr =
        moments.covariance(0, 1) / (moments.means(0) * moments.means(1));
    CHECK(corr == doctest::Approx(kSplitCorr).epsilon(1e-10));
    CHECK(corr ==
          doctest::Approx((kChainFano - 1.0) / kChainMean).epsilon(1e-10));
  }

  SUBCASE("non-unitary input is rejected with the residual") {
    Eigen::MatrixXcd bad = splitter_50_50();
    bad(0, 0) += 1e-6;
    CHECK_THROWS_AS(gauss::apply_interferometer(gauss::vacuum_state(2), bad),
                    PhysicsError);
  }
}

TEST_CASE("loss channel") {
  SUBCASE("eta = 1 identity, eta = 0 resets to vacuum") {
    const auto state = chain_state();
    const auto same = gauss::apply_loss(state, {0}, 1.0);
    CHECK((same.covariance - state.covariance).norm() == 0.0);
    const auto dark = gauss::apply_loss(state, {0}, 0.0);
    CHECK(gauss::photon_moments(dark).total_mean == doctest::Approx(0.0));
    CHECK((dark.covariance - 0.5 * Eigen::MatrixXd::Identity(2, 2)).norm() ==
          doctest::Approx(0.0));
  }

  SUBCASE("eta outside [0,1] rejected") {
    CHECK_THROWS(gauss::apply_loss(gauss::vacuum_state(1), {0}, 1.2));
  }
}

TEST_CASE("loss law and uncertainty hold on random circuits") {
  rng::Stream stream(777);
  for (int round = 0; round < 40; ++round) {
    const int modes = 1 + static_cast<int>(stream.below(3));
    auto state = gauss::vacuum_state(modes);
    for (int op = 0; op < 4; ++op) {
      const int mode = static_cast<int>(stream.below(modes));
      switch (stream.below(3)) {
        case 0:
          state = gauss::squeeze(state, mode, stream.uniform(0.0, 0.8),
                                 stream.uniform(0.0, 6.283));
          break;
        case 1:
          state = gauss::displace(
              state, mode,
              std::polar(stream.uniform(0.0, 1.5),
                         stream.uniform(0.0, 6.283)));
          break;
        case 2:
          state = gauss::apply_interferometer(
              state, scatter::sample_haar_unitary(modes, stream.next_u64()));
          break;
      }
      CHECK(gauss::symmetry_residual(state) < 1e-12);
      CHECK(gauss::min_symplectic_eigenvalue(state) > 0.5 - 1e-9);
      // Lossless circuits on vacuum stay pure.
      CHECK(gauss::min_symplectic_eigenvalue(state) < 0.5 + 1e-9);
    }

    // Energy conservation under a random interferometer.
    const double before = gauss::photon_moments(state).total_mean;
    const auto rotated = gauss::apply_interferometer(
        state, scatter::sample_haar_unitary(modes, stream.next_u64()));
    const double after = gauss::photon_moments(rotated).total_mean;
    CHECK(after == doctest::Approx(before).epsilon(1e-9));

    // Single-mode Fano law F -> 1 + eta (F - 1).
    const auto single = gauss::photon_moments(state, {0});
    if (single.total_mean > 1e-9) {
      const double eta = stream.uniform(0.1, 0.9);
      const auto lossy = gauss::apply_loss(state, {0}, eta);
      const auto after_loss = gauss::photon_moments(lossy, {0});
      CHECK(after_loss.fano_total ==
            doctest::Approx(1.0 + eta * (single.fano_total - 1.0))
                .epsilon(1e-9));
      CHECK(gauss::min_symplectic_eigenvalue(lossy) > 0.5 - 1e-9);
    }
  }
}

TEST_CASE("two-mode splitter correlation equals (F-1)/n for any input") {
  rng::Stream stream(424242);
  for (int round = 0; round < 25; ++round) {
    auto state = gauss::vacuum_state(2);
    state = gauss::squeeze(state, 0, stream.uniform(0.0, 0.8),
                           stream.uniform(0.0, 6.283));
    state = gauss::displace(state, 0,
                            std::polar(stream.uniform(0.2, 1.5),
                                       stream.uniform(0.0, 6.283)));
    const auto in_moments = gauss::photon_moments(state, {0});
    const auto out = gauss::apply_interferometer(state, splitter_50_50());
    const auto moments = gauss::photon_moments(out);
    const double lhs =
        moments.covariance(0, 1) / (moments.means(0) * moments.means(1));
    const double rhs =
        (in_moments.fano_total - 1.0) / in_moments.total_mean;
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
  }
}
