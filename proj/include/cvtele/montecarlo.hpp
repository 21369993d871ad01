#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

#include <Eigen/Dense>

#include "cvtele/gaussian.hpp"
#include "cvtele/teleport.hpp"

namespace cvtele::mc {

/// SplitMix64 stream. Satisfies UniformRandomBitGenerator.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t state) : state_(state) {}

  /// Independent stream for item `index` of a run seeded with `seed`.
  static SplitMix64 for_index(std::uint64_t seed, std::uint64_t index);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()();

 private:
  std::uint64_t state_;
};

/// One protocol shot: Alice's two homodyne outcomes and Bob's output quadratures.
struct ShotRecord {
  double alice_x;
  double alice_p;
  double bob_x;
  double bob_p;

  bool operator==(const ShotRecord&) const = default;
};

struct RunOptions {
  // 0 picks std::thread::hardware_concurrency().
  unsigned threads = 0;
};

/// n draws from the state's Wigner function, one row per draw.
/// Row i depends only on (seed, i).
Eigen::MatrixXd sample_state(const GaussianState& state, std::size_t n, std::uint64_t seed,
                             RunOptions options = {});

/// Explicit shot-by-shot protocol: sample input and EPR beams, interfere
/// input with Alice's half, read out x on the difference port and p on the
/// sum port, and displace Bob's half by gain * sqrt2 * outcome.
std::vector<ShotRecord> run_shots(const GaussianState& input, const TeleportConfig& config,
                                  std::size_t n, std::uint64_t seed, RunOptions options = {});

struct VarianceEstimate {
  QuadPair variance;      // unbiased sample variances of bob_x, bob_p
  QuadPair standard_error;  // sigma^2 sqrt(2 / (n - 1))
};

VarianceEstimate estimate_variances(const std::vector<ShotRecord>& records);

struct GainEstimate {
  double g_x;
  double g_p;
  double se_x;
  double se_p;
};

/// Ratio of Bob's mean quadratures to the input displacement. Throws
/// InvalidArgument for a zero displacement or fewer than two records; a zero
/// component of alpha0 yields NaN for that gain.
GainEstimate estimate_gain(const std::vector<ShotRecord>& records, std::complex<double> alpha0);

/// Sample Duan sum of two-mode draws (columns x1, p1, x2, p2).
double sample_duan_sum(const Eigen::MatrixXd& samples);

}  // namespace cvtele::mc
