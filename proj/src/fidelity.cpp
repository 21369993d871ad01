#include "cvtele/fidelity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "cvtele/errors.hpp"
#include "cvtele/teleport.hpp"

namespace cvtele {

double SqueezedThermalParams::beta() const {
  if (tau <= 1.0) return std::numeric_limits<double>::infinity();
  return std::log((tau + 1.0) / (tau - 1.0));
}

QuadPair SqueezedThermalParams::variances() const {
  return {std::exp(-2.0 * r) * tau * kVacuumVariance, std::exp(2.0 * r) * tau * kVacuumVariance};
}

std::string_view method_name(FidelityMethod method) {
  switch (method) {
    case FidelityMethod::vacuum_overlap:
      return "vacuum";
    case FidelityMethod::squeezed_thermal:
      return "squeezed-thermal";
    case FidelityMethod::general_gaussian:
      return "gaussian";
  }
  return "unknown";
}

SqueezedThermalParams extract_params(const QuadPair& sigma) {
  if (!sigma.is_physical()) {
    throw UnphysicalError("variance pair (" + std::to_string(sigma.sigma_x) + ", " +
                          std::to_string(sigma.sigma_p) + ") violates sigma_x * sigma_p >= 1/16");
  }
  // Within tolerance of the boundary the product may dip just below 1/16.
  const double tau = std::max(1.0, 4.0 * std::sqrt(sigma.sigma_x * sigma.sigma_p));
  return {0.25 * std::log(sigma.sigma_p / sigma.sigma_x), tau};
}

FidelityReport fidelity_vacuum(const QuadPair& out) {
  const SqueezedThermalParams params = extract_params(out);
  const double value =
      2.0 / std::sqrt((1.0 + 4.0 * out.sigma_x) * (1.0 + 4.0 * out.sigma_p));
  return {value, FidelityMethod::vacuum_overlap, SqueezedThermalParams{}, params};
}

FidelityReport fidelity_squeezed_thermal(const SqueezedThermalParams& a,
                                         const SqueezedThermalParams& b) {
  if (!(a.tau >= 1.0) || !(b.tau >= 1.0)) {
    throw UnphysicalError("thermal factor tau must be >= 1");
  }
  const double dr = a.r - b.r;
  const double prod = a.tau * b.tau;
  const double ch = std::cosh(dr);
  const double sh = std::sinh(dr);
  const double y = ch * ch * (prod + 1.0) * (prod + 1.0) - sh * sh * (prod - 1.0) * (prod - 1.0);
  const double mixed = std::sqrt((a.tau * a.tau - 1.0) * (b.tau * b.tau - 1.0));
  return {2.0 / (std::sqrt(y) - mixed), FidelityMethod::squeezed_thermal, a, b};
}

FidelityReport fidelity_squeezed_thermal(const QuadPair& a, const QuadPair& b) {
  return fidelity_squeezed_thermal(extract_params(a), extract_params(b));
}

FidelityReport fidelity_gaussian_oracle(const GaussianState& a, const GaussianState& b) {
  if (a.n_modes() != 1 || b.n_modes() != 1) {
    throw Unsupported("Gaussian fidelity oracle is single-mode only");
  }
  // Shot-noise units (vacuum covariance = identity):
  //   F = 2 / (sqrt(D + d) - sqrt(d)) * exp(-u^T (A + B)^{-1} u / 2),
  //   D = det(A + B), d = (det A - 1)(det B - 1), u = mean difference.
  const Eigen::Matrix2d va = a.mode_cov(0) / kVacuumVariance;
  const Eigen::Matrix2d vb = b.mode_cov(0) / kVacuumVariance;
  const Eigen::Vector2d u = (a.mean() - b.mean()) / std::sqrt(kVacuumVariance);
  const Eigen::Matrix2d sum = va + vb;
  const double big = sum.determinant();
  const double small = std::max(0.0, (va.determinant() - 1.0) * (vb.determinant() - 1.0));
  const double overlap = 2.0 / (std::sqrt(big + small) - std::sqrt(small));
  const double offset = std::exp(-0.5 * u.dot(sum.inverse() * u));
  return {overlap * offset, FidelityMethod::general_gaussian, std::nullopt, std::nullopt};
}

std::vector<SweepPoint> classical_fidelity_sweep(SweepAxis axis, double fixed_db, double lo_db,
                                                 double hi_db, std::size_t steps) {
  constexpr double kMaxDb = 60.0;
  if (steps < 2) throw InvalidArgument("sweep needs at least two steps");
  if (!(lo_db >= 0.0 && hi_db <= kMaxDb && lo_db < hi_db)) {
    throw InvalidArgument("sweep range must satisfy 0 <= lo < hi <= 60 dB");
  }
  if (!(fixed_db >= 0.0 && fixed_db <= kMaxDb)) {
    throw InvalidArgument("fixed value must lie in [0, 60] dB");
  }
  TeleportConfig classical;
  classical.epr_enabled = false;

  std::vector<SweepPoint> points(steps);
  for (std::size_t i = 0; i < steps; ++i) {
    const double abscissa =
        lo_db + (hi_db - lo_db) * static_cast<double>(i) / static_cast<double>(steps - 1);
    const double tau_db = axis == SweepAxis::tau_db ? abscissa : fixed_db;
    const double anti_db = axis == SweepAxis::tau_db ? fixed_db : abscissa;
    // e^{+2r} in dB is 20 r / ln 10.
    const SqueezedThermalParams input{0.5 * std::log(10.0) * anti_db / 10.0,
                                      std::pow(10.0, tau_db / 10.0)};
    const QuadPair output = teleport_variances_analytic(input.variances(), classical);
    points[i] = {abscissa, fidelity_squeezed_thermal(input, extract_params(output)).value};
  }
  return points;
}

}  // namespace cvtele
