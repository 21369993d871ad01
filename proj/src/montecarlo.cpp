#include "cvtele/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <thread>

#include "cvtele/errors.hpp"

namespace cvtele::mc {

namespace {

std::uint64_t mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Runs body(begin, end) over [0, n) in contiguous chunks.
template <class Body>
void parallel_chunks(std::size_t n, unsigned threads, Body&& body) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t workers = std::min<std::size_t>(threads, std::max<std::size_t>(1, n / 4096));
  if (workers <= 1) {
    body(std::size_t{0}, n);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  const std::size_t chunk = (n + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(n, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&body, begin, end] { body(begin, end); });
  }
}

// Lower-triangular factor with L L^T = cov. Eigen-decomposition fallback for
// covariances that are positive semidefinite only to rounding.
Eigen::MatrixXd sampling_factor(const Eigen::MatrixXd& cov) {
  Eigen::LLT<Eigen::MatrixXd> llt(cov);
  if (llt.info() == Eigen::Success) return llt.matrixL();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov);
  return es.eigenvectors() * es.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal();
}

}  // namespace

SplitMix64 SplitMix64::for_index(std::uint64_t seed, std::uint64_t index) {
  return SplitMix64(mix(seed ^ mix(index + 0x9e3779b97f4a7c15ULL)));
}

SplitMix64::result_type SplitMix64::operator()() {
  state_ += 0x9e3779b97f4a7c15ULL;
  return mix(state_);
}

Eigen::MatrixXd sample_state(const GaussianState& state, std::size_t n, std::uint64_t seed,
                             RunOptions options) {
  if (n == 0) throw InvalidArgument("sample count must be positive");
  const Eigen::Index dim = state.mean().size();
  const Eigen::MatrixXd factor = sampling_factor(state.cov());
  Eigen::MatrixXd out(static_cast<Eigen::Index>(n), dim);
  parallel_chunks(n, options.threads, [&](std::size_t begin, std::size_t end) {
    Eigen::VectorXd z(dim);
    for (std::size_t i = begin; i < end; ++i) {
      SplitMix64 rng = SplitMix64::for_index(seed, i);
      std::normal_distribution<double> normal;
      for (Eigen::Index k = 0; k < dim; ++k) z(k) = normal(rng);
      out.row(static_cast<Eigen::Index>(i)) = (state.mean() + factor * z).transpose();
    }
  });
  return out;
}

std::vector<ShotRecord> run_shots(const GaussianState& input, const TeleportConfig& config,
                                  std::size_t n, std::uint64_t seed, RunOptions options) {
  if (n == 0) throw InvalidArgument("shot count must be positive");
  if (input.n_modes() != 1) throw InvalidArgument("teleportation input must be a single mode");
  const double eta = config.input_visibility * config.input_visibility;
  const GaussianState prepared =
      tensor_product(loss_channel(input, 0, eta), resource_sources(config.resource_noise()));
  const Eigen::Matrix<double, 6, 6> factor = sampling_factor(prepared.cov());
  const Eigen::Matrix<double, 6, 1> mean = prepared.mean();
  const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;

  std::vector<ShotRecord> records(n);
  parallel_chunks(n, options.threads, [&](std::size_t begin, std::size_t end) {
    Eigen::Matrix<double, 6, 1> z;
    for (std::size_t i = begin; i < end; ++i) {
      SplitMix64 rng = SplitMix64::for_index(seed, i);
      std::normal_distribution<double> normal;
      for (Eigen::Index k = 0; k < 6; ++k) z(k) = normal(rng);
      // q = (x_in, p_in, x_s1, p_s1, x_s2, p_s2)
      const Eigen::Matrix<double, 6, 1> q = mean + factor * z;
      // EPR beamsplitter: Alice gets (s1 + s2)/sqrt2, Bob (s1 - s2)/sqrt2.
      const double xa = (q(2) + q(4)) * inv_sqrt2;
      const double pa = (q(3) + q(5)) * inv_sqrt2;
      const double xb = (q(2) - q(4)) * inv_sqrt2;
      const double pb = (q(3) - q(5)) * inv_sqrt2;
      // Bell measurement: x on the difference port, p on the sum port.
      const double alice_x = (q(0) - xa) * inv_sqrt2;
      const double alice_p = (q(1) + pa) * inv_sqrt2;
      records[i] = {alice_x, alice_p, xb + config.g_x * kFeedforwardScale * alice_x,
                    pb + config.g_p * kFeedforwardScale * alice_p};
    }
  });
  return records;
}

VarianceEstimate estimate_variances(const std::vector<ShotRecord>& records) {
  const std::size_t n = records.size();
  if (n < 2) throw InvalidArgument("variance estimate needs at least two records");
  double mx = 0.0;
  double mp = 0.0;
  for (const auto& r : records) {
    mx += r.bob_x;
    mp += r.bob_p;
  }
  mx /= static_cast<double>(n);
  mp /= static_cast<double>(n);
  double sx = 0.0;
  double sp = 0.0;
  for (const auto& r : records) {
    sx += (r.bob_x - mx) * (r.bob_x - mx);
    sp += (r.bob_p - mp) * (r.bob_p - mp);
  }
  const double dof = static_cast<double>(n - 1);
  const QuadPair variance{sx / dof, sp / dof};
  const double rel = std::sqrt(2.0 / dof);
  return {variance, {variance.sigma_x * rel, variance.sigma_p * rel}};
}

GainEstimate estimate_gain(const std::vector<ShotRecord>& records, std::complex<double> alpha0) {
  if (alpha0 == std::complex<double>{}) {
    throw InvalidArgument("gain calibration needs a nonzero displacement");
  }
  const VarianceEstimate spread = estimate_variances(records);
  double mx = 0.0;
  double mp = 0.0;
  for (const auto& r : records) {
    mx += r.bob_x;
    mp += r.bob_p;
  }
  const double n = static_cast<double>(records.size());
  mx /= n;
  mp /= n;
  const auto ratio = [](double num, double den) {
    return den == 0.0 ? std::numeric_limits<double>::quiet_NaN() : num / den;
  };
  return {ratio(mx, alpha0.real()), ratio(mp, alpha0.imag()),
          ratio(std::sqrt(spread.variance.sigma_x / n), std::abs(alpha0.real())),
          ratio(std::sqrt(spread.variance.sigma_p / n), std::abs(alpha0.imag()))};
}

double sample_duan_sum(const Eigen::MatrixXd& samples) {
  if (samples.cols() != 4 || samples.rows() < 2) {
    throw InvalidArgument("Duan sum needs two-mode samples and at least two rows");
  }
  const Eigen::VectorXd xd = samples.col(0) - samples.col(2);
  const Eigen::VectorXd ps = samples.col(1) + samples.col(3);
  const auto var = [](const Eigen::VectorXd& v) {
    return (v.array() - v.mean()).square().sum() / static_cast<double>(v.size() - 1);
  };
  return (var(xd) + var(ps)) / (4.0 * kVacuumVariance);
}

}  // namespace cvtele::mc
