#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <variant>

#include <Eigen/Dense>

namespace cvtele {

// Units: hbar = 1/2, so [x, p] = i/2 and the vacuum quadrature variance is 1/4.
inline constexpr double kVacuumVariance = 0.25;

// Absolute slack on symplectic eigenvalues when checking physicality.
inline constexpr double kPhysicalTolerance = 1e-9;

enum class Quadrature { x, p };

/// Variance of x and p for one mode, with shot-noise-referenced dB views.
struct QuadPair {
  double sigma_x = kVacuumVariance;
  double sigma_p = kVacuumVariance;

  static QuadPair from_db(double x_db, double p_db);

  double sigma_x_db() const;
  double sigma_p_db() const;

  /// sigma_x * sigma_p >= 1/16 within kPhysicalTolerance, both positive.
  bool is_physical() const;
};

/// dB relative to the vacuum level: 10 log10(sigma / (1/4)).
double to_db(double sigma);
double from_db(double db);

/// Mean quadrature vector and covariance matrix of an n-mode Gaussian state.
///
/// Quadratures are interleaved as (x1, p1, ..., xn, pn). The constructor
/// rejects asymmetric covariances and states whose smallest symplectic
/// eigenvalue lies below 1/4 - kPhysicalTolerance, so every instance is a
/// physical state.
class GaussianState {
 public:
  GaussianState(Eigen::VectorXd mean, Eigen::MatrixXd cov);

  std::size_t n_modes() const { return static_cast<std::size_t>(mean_.size() / 2); }
  const Eigen::VectorXd& mean() const { return mean_; }
  const Eigen::MatrixXd& cov() const { return cov_; }

  /// 2x2 covariance block of one mode.
  Eigen::Matrix2d mode_cov(std::size_t mode) const;

  /// Diagonal x/p variances of one mode.
  QuadPair variances(std::size_t mode) const;

  /// Marginal state of the listed modes, in the listed order.
  GaussianState reduced(std::span<const std::size_t> modes) const;

  /// Ascending, one value per mode.
  Eigen::VectorXd symplectic_eigenvalues() const;

 private:
  Eigen::VectorXd mean_;
  Eigen::MatrixXd cov_;
};

/// Symplectic eigenvalues of an arbitrary positive-definite covariance.
Eigen::VectorXd symplectic_eigenvalues(const Eigen::MatrixXd& cov);

/// True when cov is symmetric positive definite with all symplectic
/// eigenvalues >= 1/4 - kPhysicalTolerance.
bool is_physical_cov(const Eigen::MatrixXd& cov);

/// Block-diagonal form with per-mode blocks [[0, 1], [-1, 0]].
Eigen::MatrixXd symplectic_form(std::size_t n_modes);

/// Joint state of independent subsystems: modes of `a` first, then `b`.
GaussianState tensor_product(const GaussianState& a, const GaussianState& b);

// --- linear optics ---------------------------------------------------------

/// Mixes two modes: (a, b) -> (sqrt(T) a + sqrt(1-T) b, sqrt(1-T) a - sqrt(T) b),
/// identically on x and p. T = 1/2 gives ((a+b)/sqrt2, (a-b)/sqrt2).
struct Beamsplitter {
  double transmittance = 0.5;
};

/// Phase-space rotation x -> x cos(theta) - p sin(theta), p -> x sin(theta) + p cos(theta).
struct Rotation {
  double theta = 0.0;
};

/// x -> e^{-r} x, p -> e^{+r} p.
struct Squeezer {
  double r = 0.0;
};

using SymplecticKind = std::variant<Beamsplitter, Rotation, Squeezer>;

class SymplecticTransform {
 public:
  /// Throws InvalidArgument unless S Omega S^T = Omega within 1e-12.
  explicit SymplecticTransform(Eigen::MatrixXd matrix);

  static SymplecticTransform identity(std::size_t n_modes);

  std::size_t n_modes() const { return static_cast<std::size_t>(matrix_.rows() / 2); }
  const Eigen::MatrixXd& matrix() const { return matrix_; }

  /// Applies `other` first, then this.
  SymplecticTransform operator*(const SymplecticTransform& other) const;

 private:
  Eigen::MatrixXd matrix_;
};

/// Embeds a one- or two-mode element acting on `modes` into an n-mode transform.
/// Rotation and Squeezer take one mode; Beamsplitter takes two distinct modes.
SymplecticTransform make_symplectic(const SymplecticKind& kind,
                                    std::span<const std::size_t> modes,
                                    std::size_t n_modes);

// --- state preparation and channels ----------------------------------------

GaussianState vacuum_state(std::size_t n_modes);

/// Single-mode squeezed thermal state. Principal-axis variances are
/// e^{-2r} tau / 4 and e^{+2r} tau / 4 with tau = coth(beta/2) >= 1, the
/// axes rotated by theta, mean (Re alpha0, Im alpha0).
GaussianState squeezed_thermal_state(double r, double tau, double theta = 0.0,
                                     std::complex<double> alpha0 = {});

/// Zero-mean single-mode state with cov diag(sigma_x, sigma_p).
GaussianState diagonal_state(const QuadPair& sigma);

GaussianState apply_symplectic(const GaussianState& state, const SymplecticTransform& s);

GaussianState displace(const GaussianState& state, std::size_t mode, std::complex<double> alpha);

/// Pure loss: mixes `mode` with vacuum at transmittance eta.
GaussianState loss_channel(const GaussianState& state, std::size_t mode, double eta);

/// Undoes homodyne mode mismatch: sigma_true = (sigma_obs - (1-eta)/4) / eta
/// with eta = visibility^2. Throws InconsistentMeasurement if the result is
/// not positive.
double visibility_correct(double sigma_obs, double visibility);

/// Wigner function of a single-mode state at (x, p).
double wigner_value(const GaussianState& state, double x, double p);

struct HomodyneResult {
  GaussianState conditional;  // remaining modes, original order
  double outcome_variance;    // marginal variance of the measured quadrature
};

/// Ideal homodyne detection of one quadrature of `mode` with result `outcome`.
HomodyneResult homodyne_condition(const GaussianState& state, std::size_t mode,
                                  Quadrature quadrature, double outcome);

}  // namespace cvtele
