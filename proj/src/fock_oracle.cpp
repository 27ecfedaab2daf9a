#include "qscatter/fock_oracle.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "qscatter/errors.hpp"
#include "qscatter/gaussian_ops.hpp"

namespace qscatter::fock {

namespace {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;
using cd = std::complex<double>;

constexpr std::int64_t kAmplitudeBudget = 4'000'000;
constexpr double kLeakageLimit = 1e-8;

// Annihilation operator truncated at dimension dim.
MatrixXcd annihilation(int dim) {
  MatrixXcd a = MatrixXcd::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(double(n));
  return a;
}

// exp(A) for anti-Hermitian A via the Hermitian eigendecomposition of iA.
MatrixXcd exp_antihermitian(const MatrixXcd &gen) {
  Eigen::SelfAdjointEigenSolver<MatrixXcd> eig(cd(0.0, 1.0) * gen);
  const auto &phases = eig.eigenvalues();
  MatrixXcd core = (cd(0.0, -1.0) * phases.cast<cd>()).array().exp().matrix().asDiagonal();
  return eig.eigenvectors() * core * eig.eigenvectors().adjoint();
}

// Single-mode operator built at a padded dimension and cropped back, so
// amplitude that would escape past the cutoff shows up as norm loss.
MatrixXcd cropped_exp(const MatrixXcd &gen_big, int dim) {
  return exp_antihermitian(gen_big).topLeftCorner(dim, dim);
}

MatrixXcd squeeze_matrix(int dim, double r, double theta) {
  const int big = 2 * dim;
  const MatrixXcd a = annihilation(big);
  const MatrixXcd a2 = a * a;
  const cd z = std::polar(r, theta);
  return cropped_exp(0.5 * (std::conj(z) * a2 - z * a2.adjoint()), dim);
}

MatrixXcd displace_matrix(int dim, cd alpha) {
  const int big = 2 * dim;
  const MatrixXcd a = annihilation(big);
  return cropped_exp(alpha * a.adjoint() - std::conj(alpha) * a, dim);
}

// Hermitian log of a 2x2 unitary: g = exp(i h). Uses the SU(2) closed
// form after factoring out the determinant phase.
Eigen::Matrix2cd hermitian_log_unitary(const Eigen::Matrix2cd &g) {
  const cd det = g.determinant();
  const double chi = std::arg(det);
  const Eigen::Matrix2cd gs = std::polar(1.0, -chi / 2.0) * g;
  double cos_theta = 0.5 * gs.trace().real();
  cos_theta = std::clamp(cos_theta, -1.0, 1.0);
  const double theta = std::acos(cos_theta);
  Eigen::Matrix2cd h = (chi / 2.0) * Eigen::Matrix2cd::Identity();
  const double sin_theta = std::sin(theta);
  if (std::abs(sin_theta) > 1e-14) {
    const Eigen::Matrix2cd n_sigma =
        (gs - cos_theta * Eigen::Matrix2cd::Identity()) / cd(0.0, sin_theta);
    h += theta * n_sigma;
  }
  return 0.5 * (h + h.adjoint()).eval();
}

// Tensor state over a growing list of modes; mode 0 has stride 1 and
// appended ancillas get the largest strides.
class FockState {
public:
  explicit FockState(int num_modes, int dim) {
    dims_.assign(num_modes, dim);
    std::int64_t total = 1;
    for (int d : dims_) total *= d;
    amp_ = VectorXcd::Zero(total);
    amp_(0) = 1.0; // vacuum
  }

  int mode_count() const { return static_cast<int>(dims_.size()); }
  std::int64_t size() const { return amp_.size(); }
  double norm2() const { return amp_.squaredNorm(); }

  std::int64_t stride(int mode) const {
    std::int64_t s = 1;
    for (int m = 0; m < mode; ++m) s *= dims_[m];
    return s;
  }

  void append_vacuum_mode(int dim) {
    if (size() * dim > kAmplitudeBudget)
      throw PhysicsError(
          "fock oracle: state too large after loss ancilla; reduce the "
          "number of modes or loss operations");
    VectorXcd grown = VectorXcd::Zero(size() * dim);
    grown.head(size()) = amp_;
    amp_.swap(grown);
    dims_.push_back(dim);
  }

  // Apply a dim x dim matrix to one tensor axis.
  void apply_single(int mode, const MatrixXcd &op) {
    const int d = dims_[mode];
    const std::int64_t inner = stride(mode);
    const std::int64_t outer = size() / (d * inner);
    if (inner == 1) {
      Eigen::Map<MatrixXcd> view(amp_.data(), d, outer);
      view = op * view;
      return;
    }
    MatrixXcd fiber(d, inner);
    for (std::int64_t o = 0; o < outer; ++o) {
      cd *base = amp_.data() + o * d * inner;
      for (int k = 0; k < d; ++k)
        fiber.row(k) = Eigen::Map<Eigen::RowVectorXcd>(base + k * inner, inner);
      fiber = op * fiber;
      for (int k = 0; k < d; ++k)
        Eigen::Map<Eigen::RowVectorXcd>(base + k * inner, inner) = fiber.row(k);
    }
  }

  // Apply a photon-number-conserving two-mode operation given the 2x2
  // Hermitian generator h (the Fock unitary is exp(-i sum h_jk aj^dag ak)).
  // Sector matrices are built on the untruncated sector and cropped to
  // the available window, so truncation shows up as norm loss.
  void apply_pair(int mode_p, int mode_q, const Eigen::Matrix2cd &h) {
    const int dp = dims_[mode_p], dq = dims_[mode_q];
    const std::int64_t sp = stride(mode_p), sq = stride(mode_q);

    std::vector<std::int64_t> rest = rest_offsets(mode_p, mode_q);
    const std::int64_t rest_count = static_cast<std::int64_t>(rest.size());

    MatrixXcd gathered;
    for (int n = 0; n <= dp + dq - 2; ++n) {
      const int m_lo = std::max(0, n - (dq - 1));
      const int m_hi = std::min(dp - 1, n);
      const int width = m_hi - m_lo + 1;
      if (width <= 0) continue;

      // Full-sector Hermitian generator, then crop.
      MatrixXcd h_sec = MatrixXcd::Zero(n + 1, n + 1);
      for (int m = 0; m <= n; ++m) {
        h_sec(m, m) = h(0, 0).real() * m + h(1, 1).real() * (n - m);
        if (m < n) {
          const double c = std::sqrt(double(m + 1) * double(n - m));
          h_sec(m + 1, m) = h(0, 1) * c;
          h_sec(m, m + 1) = h(1, 0) * c;
        }
      }
      Eigen::SelfAdjointEigenSolver<MatrixXcd> eig(h_sec);
      MatrixXcd u_full = eig.eigenvectors() *
                         (cd(0.0, -1.0) * eig.eigenvalues().cast<cd>())
                             .array()
                             .exp()
                             .matrix()
                             .asDiagonal() *
                         eig.eigenvectors().adjoint();
      const MatrixXcd u_sec = u_full.block(m_lo, m_lo, width, width);

      gathered.resize(width, rest_count);
      for (std::int64_t c = 0; c < rest_count; ++c) {
        const std::int64_t base = rest[c];
        for (int w = 0; w < width; ++w) {
          const int m = m_lo + w;
          gathered(w, c) = amp_(base + m * sp + std::int64_t(n - m) * sq);
        }
      }
      gathered = u_sec * gathered;
      for (std::int64_t c = 0; c < rest_count; ++c) {
        const std::int64_t base = rest[c];
        for (int w = 0; w < width; ++w) {
          const int m = m_lo + w;
          amp_(base + m * sp + std::int64_t(n - m) * sq) = gathered(w, c);
        }
      }
    }
  }

  // Multiply each basis state by exp(i sum_m phase_m n_m).
  void apply_phases(const std::vector<double> &phases) {
    std::vector<int> counter(dims_.size(), 0);
    for (std::int64_t idx = 0; idx < size(); ++idx) {
      double total = 0.0;
      for (std::size_t m = 0; m < phases.size(); ++m)
        total += phases[m] * counter[m];
      amp_(idx) *= std::polar(1.0, total);
      for (std::size_t m = 0; m < counter.size(); ++m) {
        if (++counter[m] < dims_[m]) break;
        counter[m] = 0;
      }
    }
  }

  // Photon moments over the listed modes (ancillas simply not listed).
  gauss::PhotonMoments moments(const std::vector<int> &modes) const {
    const int k = static_cast<int>(modes.size());
    Eigen::VectorXd first = Eigen::VectorXd::Zero(k);
    Eigen::MatrixXd second = Eigen::MatrixXd::Zero(k, k);
    double norm = 0.0;

    std::vector<int> counter(dims_.size(), 0);
    for (std::int64_t idx = 0; idx < size(); ++idx) {
      const double p = std::norm(amp_(idx));
      if (p > 0.0) {
        norm += p;
        for (int i = 0; i < k; ++i) {
          const double ni = counter[modes[i]];
          first(i) += p * ni;
          for (int j = 0; j <= i; ++j)
            second(i, j) += p * ni * counter[modes[j]];
        }
      }
      for (std::size_t m = 0; m < counter.size(); ++m) {
        if (++counter[m] < dims_[m]) break;
        counter[m] = 0;
      }
    }

    gauss::PhotonMoments out;
    out.mode_ids = modes;
    out.means = first / norm;
    out.number_covariance.resize(k, k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j <= i; ++j) {
        const double cov = second(i, j) / norm - out.means(i) * out.means(j);
        out.number_covariance(i, j) = cov;
        out.number_covariance(j, i) = cov;
      }
    out.total_mean = out.means.sum();
    out.total_variance = out.number_covariance.sum();
    out.fano_total = out.total_mean > 0.0
                         ? out.total_variance / out.total_mean
                         : std::numeric_limits<double>::quiet_NaN();
    return out;
  }

  int dim(int mode) const { return dims_[mode]; }

private:
  std::vector<std::int64_t> rest_offsets(int mode_p, int mode_q) const {
    std::vector<std::int64_t> offsets;
    offsets.reserve(size() / (std::int64_t(dims_[mode_p]) * dims_[mode_q]));
    std::vector<int> counter(dims_.size(), 0);
    std::int64_t offset = 0;
    const std::int64_t total = size();
    std::vector<std::int64_t> strides(dims_.size());
    for (std::size_t m = 0; m < dims_.size(); ++m) strides[m] = stride(int(m));
    // Odometer over all modes except p and q.
    for (;;) {
      offsets.push_back(offset);
      std::size_t m = 0;
      for (; m < counter.size(); ++m) {
        if (int(m) == mode_p || int(m) == mode_q) continue;
        if (++counter[m] < dims_[m]) {
          offset += strides[m];
          break;
        }
        offset -= strides[m] * (dims_[m] - 1);
        counter[m] = 0;
      }
      if (m == counter.size()) break;
    }
    (void)total;
    return offsets;
  }

  std::vector<int> dims_;
  VectorXcd amp_;
};

void validate(const CircuitDescription &circuit) {
  if (circuit.num_modes < 1 || circuit.num_modes > 3)
    throw std::invalid_argument("fock oracle: supports 1 to 3 modes");
  if (circuit.cutoff < 10)
    throw std::invalid_argument("fock oracle: cutoff must be at least 10");
  for (const auto &op : circuit.ops) {
    std::visit(
        [&](const auto &p) {
          using T = std::decay_t<decltype(p)>;
          if constexpr (std::is_same_v<T, SqueezeOp>) {
            if (p.mode < 0 || p.mode >= circuit.num_modes)
              throw std::out_of_range("fock oracle: squeeze mode");
            if (!std::isfinite(p.r) || !std::isfinite(p.theta))
              throw std::invalid_argument("fock oracle: squeeze parameters");
          } else if constexpr (std::is_same_v<T, DisplaceOp>) {
            if (p.mode < 0 || p.mode >= circuit.num_modes)
              throw std::out_of_range("fock oracle: displace mode");
          } else if constexpr (std::is_same_v<T, InterferometerOp>) {
            if (p.unitary.rows() != circuit.num_modes ||
                p.unitary.cols() != circuit.num_modes)
              throw std::invalid_argument(
                  "fock oracle: interferometer dimension mismatch");
          } else if constexpr (std::is_same_v<T, LossOp>) {
            if (p.mode < 0 || p.mode >= circuit.num_modes)
              throw std::out_of_range("fock oracle: loss mode");
            if (!(p.eta >= 0.0 && p.eta <= 1.0))
              throw std::invalid_argument("fock oracle: eta outside [0, 1]");
          }
        },
        op);
  }
}

// Reck-style factorization U = G_1^dag ... G_K^dag D into two-mode
// rotations plus diagonal phases; applied in Fock space right to left.
void apply_interferometer_fock(FockState &state, const MatrixXcd &unitary,
                               int num_modes) {
  MatrixXcd work = unitary;
  struct Rotation {
    int row;
    Eigen::Matrix2cd block; // the G_k^dag factor
  };
  std::vector<Rotation> rotations;
  for (int col = 0; col < num_modes - 1; ++col) {
    for (int row = num_modes - 1; row > col; --row) {
      const cd a = work(row - 1, col);
      const cd b = work(row, col);
      if (std::abs(b) < 1e-15) continue;
      const double mag = std::sqrt(std::norm(a) + std::norm(b));
      Eigen::Matrix2cd g;
      g << std::conj(a) / mag, std::conj(b) / mag, -b / mag, a / mag;
      work.middleRows<2>(row - 1) = g * work.middleRows<2>(row - 1);
      rotations.push_back({row - 1, g.adjoint()});
    }
  }

  std::vector<double> phases(state.mode_count(), 0.0);
  for (int m = 0; m < num_modes; ++m) phases[m] = std::arg(work(m, m));
  state.apply_phases(phases);

  for (auto it = rotations.rbegin(); it != rotations.rend(); ++it)
    state.apply_pair(it->row, it->row + 1, hermitian_log_unitary(it->block));
}

} // namespace

OracleResult oracle_photon_moments(const CircuitDescription &circuit) {
  validate(circuit);
  const int dim = circuit.cutoff + 1;
  FockState state(circuit.num_modes, dim);

  for (const auto &op : circuit.ops) {
    std::visit(
        [&](const auto &p) {
          using T = std::decay_t<decltype(p)>;
          if constexpr (std::is_same_v<T, SqueezeOp>) {
            state.apply_single(p.mode, squeeze_matrix(dim, p.r, p.theta));
          } else if constexpr (std::is_same_v<T, DisplaceOp>) {
            state.apply_single(p.mode, displace_matrix(dim, p.alpha));
          } else if constexpr (std::is_same_v<T, InterferometerOp>) {
            apply_interferometer_fock(state, p.unitary, circuit.num_modes);
          } else if constexpr (std::is_same_v<T, LossOp>) {
            state.append_vacuum_mode(dim);
            Eigen::Matrix2cd g;
            const double c = std::sqrt(p.eta), s = std::sqrt(1.0 - p.eta);
            g << c, -s, s, c;
            state.apply_pair(p.mode, state.mode_count() - 1,
                             hermitian_log_unitary(g));
          }
        },
        op);
  }

  OracleResult result;
  result.leakage = 1.0 - state.norm2();
  if (result.leakage >= kLeakageLimit)
    throw PhysicsError("fock oracle: truncation leakage " +
                       std::to_string(result.leakage) +
                       " too large; increase cutoff");
  std::vector<int> system(circuit.num_modes);
  std::iota(system.begin(), system.end(), 0);
  result.moments = state.moments(system);
  return result;
}

gauss::PhotonMoments gaussian_circuit_moments(const CircuitDescription &circuit) {
  validate(circuit);
  gauss::GaussianState state = gauss::vacuum_state(circuit.num_modes);
  for (const auto &op : circuit.ops) {
    std::visit(
        [&](const auto &p) {
          using T = std::decay_t<decltype(p)>;
          if constexpr (std::is_same_v<T, SqueezeOp>) {
            state = gauss::squeeze(state, p.mode, p.r, p.theta);
          } else if constexpr (std::is_same_v<T, DisplaceOp>) {
            state = gauss::displace(state, p.mode, p.alpha);
          } else if constexpr (std::is_same_v<T, InterferometerOp>) {
            state = gauss::apply_interferometer(state, p.unitary);
          } else if constexpr (std::is_same_v<T, LossOp>) {
            state = gauss::apply_loss(state, {p.mode}, p.eta);
          }
        },
        op);
  }
  return gauss::photon_moments(state);
}

} // namespace qscatter::fock
