#include "cvtele/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <type_traits>
#include <vector>

#include "cvtele/errors.hpp"

namespace cvtele {

namespace {

constexpr double kSymmetryTolerance = 1e-12;
constexpr double kSymplecticTolerance = 1e-12;

void check_mode(std::size_t mode, std::size_t n_modes) {
  if (mode >= n_modes) {
    throw InvalidArgument("mode index " + std::to_string(mode) + " out of range for " +
                          std::to_string(n_modes) + "-mode state");
  }
}

Eigen::Index xi(std::size_t mode) { return static_cast<Eigen::Index>(2 * mode); }

}  // namespace

// --- dB ---------------------------------------------------------------------

double to_db(double sigma) {
  if (!(sigma > 0.0)) throw InvalidArgument("variance must be positive to express in dB");
  return 10.0 * std::log10(sigma / kVacuumVariance);
}

double from_db(double db) { return kVacuumVariance * std::pow(10.0, db / 10.0); }

QuadPair QuadPair::from_db(double x_db, double p_db) {
  return {cvtele::from_db(x_db), cvtele::from_db(p_db)};
}

double QuadPair::sigma_x_db() const { return to_db(sigma_x); }
double QuadPair::sigma_p_db() const { return to_db(sigma_p); }

bool QuadPair::is_physical() const {
  return sigma_x > 0.0 && sigma_p > 0.0 &&
         sigma_x * sigma_p >= kVacuumVariance * kVacuumVariance - kPhysicalTolerance;
}

// --- GaussianState ----------------------------------------------------------

Eigen::MatrixXd symplectic_form(std::size_t n_modes) {
  Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(xi(n_modes), xi(n_modes));
  for (std::size_t k = 0; k < n_modes; ++k) {
    omega(xi(k), xi(k) + 1) = 1.0;
    omega(xi(k) + 1, xi(k)) = -1.0;
  }
  return omega;
}

Eigen::VectorXd symplectic_eigenvalues(const Eigen::MatrixXd& cov) {
  const auto n = static_cast<std::size_t>(cov.rows() / 2);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov);
  if (es.eigenvalues().minCoeff() <= 0.0) {
    throw UnphysicalError("covariance matrix is not positive definite");
  }
  // nu^2 are the (doubly degenerate) eigenvalues of -(V^1/2 Omega V^1/2)^2.
  const Eigen::MatrixXd root = es.operatorSqrt();
  const Eigen::MatrixXd k = root * symplectic_form(n) * root;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ks(-(k * k), Eigen::EigenvaluesOnly);
  Eigen::VectorXd nu(static_cast<Eigen::Index>(n));
  for (std::size_t j = 0; j < n; ++j) {
    // Pair up neighbours in the ascending list.
    const double a = ks.eigenvalues()(xi(j));
    const double b = ks.eigenvalues()(xi(j) + 1);
    nu(static_cast<Eigen::Index>(j)) = std::sqrt(std::max(0.0, 0.5 * (a + b)));
  }
  return nu;
}

bool is_physical_cov(const Eigen::MatrixXd& cov) {
  if (cov.rows() != cov.cols() || cov.rows() == 0 || cov.rows() % 2 != 0) return false;
  if (!cov.allFinite()) return false;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() <= 0.0) return false;
  return symplectic_eigenvalues(cov).minCoeff() >= kVacuumVariance - kPhysicalTolerance;
}

GaussianState::GaussianState(Eigen::VectorXd mean, Eigen::MatrixXd cov)
    : mean_(std::move(mean)), cov_(std::move(cov)) {
  if (mean_.size() == 0 || mean_.size() % 2 != 0) {
    throw InvalidArgument("mean vector length must be a positive even number");
  }
  if (cov_.rows() != mean_.size() || cov_.cols() != mean_.size()) {
    throw InvalidArgument("covariance shape does not match mean vector");
  }
  if (!mean_.allFinite() || !cov_.allFinite()) {
    throw InvalidArgument("state contains non-finite entries");
  }
  const double scale = std::max(1.0, cov_.cwiseAbs().maxCoeff());
  if ((cov_ - cov_.transpose()).cwiseAbs().maxCoeff() > kSymmetryTolerance * scale) {
    throw InvalidArgument("covariance matrix is not symmetric");
  }
  cov_ = 0.5 * (cov_ + cov_.transpose()).eval();
  if (!is_physical_cov(cov_)) {
    throw UnphysicalError("covariance violates the uncertainty principle "
                          "(symplectic eigenvalue below 1/4)");
  }
}

Eigen::Matrix2d GaussianState::mode_cov(std::size_t mode) const {
  check_mode(mode, n_modes());
  return cov_.block<2, 2>(xi(mode), xi(mode));
}

QuadPair GaussianState::variances(std::size_t mode) const {
  check_mode(mode, n_modes());
  return {cov_(xi(mode), xi(mode)), cov_(xi(mode) + 1, xi(mode) + 1)};
}

GaussianState GaussianState::reduced(std::span<const std::size_t> modes) const {
  if (modes.empty()) throw InvalidArgument("reduced state needs at least one mode");
  const auto m = static_cast<Eigen::Index>(2 * modes.size());
  Eigen::VectorXd mu(m);
  Eigen::MatrixXd v(m, m);
  for (std::size_t a = 0; a < modes.size(); ++a) {
    check_mode(modes[a], n_modes());
    mu.segment<2>(xi(a)) = mean_.segment<2>(xi(modes[a]));
    for (std::size_t b = 0; b < modes.size(); ++b) {
      v.block<2, 2>(xi(a), xi(b)) = cov_.block<2, 2>(xi(modes[a]), xi(modes[b]));
    }
  }
  return {std::move(mu), std::move(v)};
}

Eigen::VectorXd GaussianState::symplectic_eigenvalues() const {
  return cvtele::symplectic_eigenvalues(cov_);
}

GaussianState tensor_product(const GaussianState& a, const GaussianState& b) {
  const auto na = a.mean().size();
  const auto nb = b.mean().size();
  Eigen::VectorXd mu(na + nb);
  mu << a.mean(), b.mean();
  Eigen::MatrixXd v = Eigen::MatrixXd::Zero(na + nb, na + nb);
  v.topLeftCorner(na, na) = a.cov();
  v.bottomRightCorner(nb, nb) = b.cov();
  return {std::move(mu), std::move(v)};
}

// --- symplectic transforms --------------------------------------------------

SymplecticTransform::SymplecticTransform(Eigen::MatrixXd matrix) : matrix_(std::move(matrix)) {
  if (matrix_.rows() == 0 || matrix_.rows() != matrix_.cols() || matrix_.rows() % 2 != 0) {
    throw InvalidArgument("symplectic matrix must be square with even dimension");
  }
  const Eigen::MatrixXd omega = symplectic_form(n_modes());
  const double err = (matrix_ * omega * matrix_.transpose() - omega).cwiseAbs().maxCoeff();
  const double scale = std::max(1.0, matrix_.cwiseAbs().maxCoeff());
  if (err > kSymplecticTolerance * scale * scale) {
    throw InvalidArgument("matrix does not preserve the symplectic form");
  }
}

SymplecticTransform SymplecticTransform::identity(std::size_t n_modes) {
  if (n_modes == 0) throw InvalidArgument("transform needs at least one mode");
  return SymplecticTransform(Eigen::MatrixXd::Identity(xi(n_modes), xi(n_modes)));
}

SymplecticTransform SymplecticTransform::operator*(const SymplecticTransform& other) const {
  if (other.n_modes() != n_modes()) throw InvalidArgument("composing transforms of different size");
  return SymplecticTransform(matrix_ * other.matrix_);
}

namespace {

struct LocalBlock {
  Eigen::MatrixXd block;
  std::size_t arity;
};

LocalBlock local_block(const SymplecticKind& kind) {
  return std::visit(
      [](const auto& k) -> LocalBlock {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, Rotation>) {
          const double c = std::cos(k.theta);
          const double s = std::sin(k.theta);
          Eigen::MatrixXd m(2, 2);
          m << c, -s, s, c;
          return {m, 1};
        } else if constexpr (std::is_same_v<K, Squeezer>) {
          Eigen::MatrixXd m(2, 2);
          m << std::exp(-k.r), 0.0, 0.0, std::exp(k.r);
          return {m, 1};
        } else {
          if (!(k.transmittance >= 0.0 && k.transmittance <= 1.0)) {
            throw InvalidArgument("beamsplitter transmittance must lie in [0, 1]");
          }
          const double t = std::sqrt(k.transmittance);
          const double rr = std::sqrt(1.0 - k.transmittance);
          // 4x4 in (x_a, p_a, x_b, p_b) ordering; the same mixing on x and p.
          Eigen::MatrixXd m = Eigen::MatrixXd::Zero(4, 4);
          for (Eigen::Index q = 0; q < 2; ++q) {
            m(q, q) = t;
            m(q, 2 + q) = rr;
            m(2 + q, q) = rr;
            m(2 + q, 2 + q) = -t;
          }
          return {m, 2};
        }
      },
      kind);
}

}  // namespace

SymplecticTransform make_symplectic(const SymplecticKind& kind,
                                    std::span<const std::size_t> modes,
                                    std::size_t n_modes) {
  if (n_modes == 0) throw InvalidArgument("transform needs at least one mode");
  const LocalBlock local = local_block(kind);
  if (modes.size() != local.arity) {
    throw InvalidArgument("element acts on " + std::to_string(local.arity) +
                          " mode(s), got " + std::to_string(modes.size()));
  }
  for (std::size_t a = 0; a < modes.size(); ++a) {
    check_mode(modes[a], n_modes);
    for (std::size_t b = 0; b < a; ++b) {
      if (modes[a] == modes[b]) throw InvalidArgument("mode indices must be distinct");
    }
  }
  Eigen::MatrixXd s = Eigen::MatrixXd::Identity(xi(n_modes), xi(n_modes));
  for (std::size_t a = 0; a < modes.size(); ++a) {
    for (std::size_t b = 0; b < modes.size(); ++b) {
      s.block<2, 2>(xi(modes[a]), xi(modes[b])) = local.block.block<2, 2>(xi(a), xi(b));
    }
  }
  return SymplecticTransform(std::move(s));
}

// --- states and channels ----------------------------------------------------

GaussianState vacuum_state(std::size_t n_modes) {
  if (n_modes == 0) throw InvalidArgument("vacuum state needs at least one mode");
  return {Eigen::VectorXd::Zero(xi(n_modes)),
          kVacuumVariance * Eigen::MatrixXd::Identity(xi(n_modes), xi(n_modes))};
}

GaussianState squeezed_thermal_state(double r, double tau, double theta,
                                     std::complex<double> alpha0) {
  if (!(tau >= 1.0)) {
    throw UnphysicalError("thermal factor tau = coth(beta/2) must be >= 1, got " +
                          std::to_string(tau));
  }
  if (!std::isfinite(r) || !std::isfinite(tau) || !std::isfinite(theta)) {
    throw InvalidArgument("squeezed thermal parameters must be finite");
  }
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const Eigen::Matrix2d rot{{c, -s}, {s, c}};
  const Eigen::Matrix2d principal{{std::exp(-2.0 * r) * tau * kVacuumVariance, 0.0},
                                  {0.0, std::exp(2.0 * r) * tau * kVacuumVariance}};
  Eigen::Matrix2d cov = rot * principal * rot.transpose();
  // Exact symmetry; the rotation product can differ in the last bit.
  cov(1, 0) = cov(0, 1);
  return {Eigen::Vector2d(alpha0.real(), alpha0.imag()), Eigen::MatrixXd(cov)};
}

GaussianState diagonal_state(const QuadPair& sigma) {
  if (!sigma.is_physical()) {
    throw UnphysicalError("variance pair violates sigma_x * sigma_p >= 1/16");
  }
  Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(2, 2);
  cov(0, 0) = sigma.sigma_x;
  cov(1, 1) = sigma.sigma_p;
  return {Eigen::VectorXd::Zero(2), std::move(cov)};
}

GaussianState apply_symplectic(const GaussianState& state, const SymplecticTransform& s) {
  if (s.n_modes() != state.n_modes()) {
    throw InvalidArgument("transform acts on " + std::to_string(s.n_modes()) +
                          " modes, state has " + std::to_string(state.n_modes()));
  }
  const Eigen::MatrixXd& m = s.matrix();
  Eigen::MatrixXd cov = m * state.cov() * m.transpose();
  cov = 0.5 * (cov + cov.transpose()).eval();
  return {m * state.mean(), std::move(cov)};
}

GaussianState displace(const GaussianState& state, std::size_t mode, std::complex<double> alpha) {
  check_mode(mode, state.n_modes());
  Eigen::VectorXd mu = state.mean();
  mu(xi(mode)) += alpha.real();
  mu(xi(mode) + 1) += alpha.imag();
  return {std::move(mu), state.cov()};
}

GaussianState loss_channel(const GaussianState& state, std::size_t mode, double eta) {
  check_mode(mode, state.n_modes());
  if (!(eta >= 0.0 && eta <= 1.0)) throw InvalidArgument("loss transmittance must lie in [0, 1]");
  const double amp = std::sqrt(eta);
  const Eigen::Index i = xi(mode);
  Eigen::VectorXd mu = state.mean();
  mu.segment<2>(i) *= amp;
  Eigen::MatrixXd cov = state.cov();
  cov.middleRows<2>(i) *= amp;
  cov.middleCols<2>(i) *= amp;
  cov.block<2, 2>(i, i) += (1.0 - eta) * kVacuumVariance * Eigen::Matrix2d::Identity();
  return {std::move(mu), std::move(cov)};
}

double visibility_correct(double sigma_obs, double visibility) {
  if (!(visibility > 0.0 && visibility <= 1.0)) {
    throw InvalidArgument("visibility must lie in (0, 1]");
  }
  const double eta = visibility * visibility;
  const double corrected = (sigma_obs - (1.0 - eta) * kVacuumVariance) / eta;
  if (!(corrected > 0.0)) {
    throw InconsistentMeasurement("observed variance " + std::to_string(sigma_obs) +
                                  " is below the loss floor for visibility " +
                                  std::to_string(visibility));
  }
  return corrected;
}

double wigner_value(const GaussianState& state, double x, double p) {
  if (state.n_modes() != 1) throw Unsupported("Wigner evaluation is single-mode only");
  const Eigen::Matrix2d v = state.mode_cov(0);
  const Eigen::Vector2d d = Eigen::Vector2d(x, p) - state.mean().head<2>();
  const double det = v.determinant();
  const double quad = d.dot(v.inverse() * d);
  return std::exp(-0.5 * quad) / (2.0 * std::numbers::pi * std::sqrt(det));
}

HomodyneResult homodyne_condition(const GaussianState& state, std::size_t mode,
                                  Quadrature quadrature, double outcome) {
  if (state.n_modes() < 2) {
    throw InvalidArgument("homodyne conditioning needs at least two modes");
  }
  check_mode(mode, state.n_modes());
  const Eigen::Index dim = state.mean().size();
  const Eigen::Index measured = xi(mode) + (quadrature == Quadrature::p ? 1 : 0);

  // Remaining quadratures: every mode except the measured one, in order.
  std::vector<Eigen::Index> keep;
  for (Eigen::Index k = 0; k < dim; ++k) {
    if (k / 2 != xi(mode) / 2) keep.push_back(k);
  }
  const auto m = static_cast<Eigen::Index>(keep.size());
  Eigen::VectorXd mu_a(m);
  Eigen::MatrixXd v_a(m, m);
  Eigen::VectorXd c(m);
  for (Eigen::Index a = 0; a < m; ++a) {
    mu_a(a) = state.mean()(keep[a]);
    c(a) = state.cov()(keep[a], measured);
    for (Eigen::Index b = 0; b < m; ++b) v_a(a, b) = state.cov()(keep[a], keep[b]);
  }
  const double v_b = state.cov()(measured, measured);
  // Moore-Penrose inverse of the 1x1 measured block.
  const double pinv = v_b > 0.0 ? 1.0 / v_b : 0.0;
  mu_a += c * (pinv * (outcome - state.mean()(measured)));
  v_a -= pinv * c * c.transpose();
  v_a = 0.5 * (v_a + v_a.transpose()).eval();
  return {GaussianState(std::move(mu_a), std::move(v_a)), v_b};
}

}  // namespace cvtele
