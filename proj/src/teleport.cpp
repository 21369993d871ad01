#include "cvtele/teleport.hpp"

#include <array>
#include <cmath>

#include "cvtele/errors.hpp"

namespace cvtele {

void TeleportConfig::validate() const {
  if (!(r_minus >= 0.0) || !(r_plus >= 0.0) || !std::isfinite(r_minus) || !std::isfinite(r_plus)) {
    throw InvalidArgument("resource squeezing parameters must be finite and >= 0");
  }
  if (!std::isfinite(g_x) || !std::isfinite(g_p)) throw InvalidArgument("gains must be finite");
  if (!(input_visibility > 0.0 && input_visibility <= 1.0)) {
    throw InvalidArgument("input visibility must lie in (0, 1]");
  }
  for (const auto& leg : {x_leg_squeeze, p_leg_squeeze}) {
    if (leg && !(*leg > 0.0 && std::isfinite(*leg))) {
      throw InvalidArgument("per-leg squeezing factor must be positive");
    }
  }
}

ResourceNoise TeleportConfig::resource_noise() const {
  validate();
  if (!epr_enabled) return {};
  const double squeezed = std::exp(-2.0 * r_minus);
  return {x_leg_squeeze.value_or(squeezed), p_leg_squeeze.value_or(squeezed),
          std::exp(2.0 * r_plus)};
}

GaussianState make_epr(double r_minus, double r_plus) {
  if (!(r_minus >= 0.0) || !(r_plus >= 0.0)) {
    throw InvalidArgument("EPR squeezing parameters must be >= 0");
  }
  const double squeezed = std::exp(-2.0 * r_minus);
  return make_epr(ResourceNoise{squeezed, squeezed, std::exp(2.0 * r_plus)});
}

GaussianState resource_sources(const ResourceNoise& noise) {
  // Both sources start x-squeezed; source 1 is then turned by pi/2.
  const GaussianState source1 = apply_symplectic(
      diagonal_state({noise.p_squeezed * kVacuumVariance, noise.antisqueezed * kVacuumVariance}),
      make_symplectic(Rotation{std::numbers::pi / 2}, std::array<std::size_t, 1>{0}, 1));
  const GaussianState source2 =
      diagonal_state({noise.x_squeezed * kVacuumVariance, noise.antisqueezed * kVacuumVariance});
  return tensor_product(source1, source2);
}

GaussianState make_epr(const ResourceNoise& noise) {
  return apply_symplectic(resource_sources(noise),
                          make_symplectic(Beamsplitter{0.5}, std::array<std::size_t, 2>{0, 1}, 2));
}

double duan_sum(const GaussianState& two_mode) {
  if (two_mode.n_modes() != 2) throw InvalidArgument("Duan sum needs exactly two modes");
  const Eigen::MatrixXd& v = two_mode.cov();
  const double var_x_diff = v(0, 0) + v(2, 2) - 2.0 * v(0, 2);
  const double var_p_sum = v(1, 1) + v(3, 3) + 2.0 * v(1, 3);
  return (var_x_diff + var_p_sum) / (2.0 * kVacuumVariance * 2.0);
}

QuadPair teleport_variances_analytic(const QuadPair& input, const TeleportConfig& config) {
  const ResourceNoise noise = config.resource_noise();
  const double eta = config.input_visibility * config.input_visibility;
  const auto leg = [&](double sigma_in, double g, double squeezed) {
    const double coupled = eta * sigma_in + (1.0 - eta) * kVacuumVariance;
    return g * g * coupled + squeezed * (1.0 + g) * (1.0 + g) / 8.0 +
           noise.antisqueezed * (1.0 - g) * (1.0 - g) / 8.0;
  };
  return {leg(input.sigma_x, config.g_x, noise.x_squeezed),
          leg(input.sigma_p, config.g_p, noise.p_squeezed)};
}

GaussianState bell_measurement_state(const GaussianState& input, const TeleportConfig& config) {
  if (input.n_modes() != 1) throw InvalidArgument("teleportation input must be a single mode");
  const GaussianState epr = make_epr(config.resource_noise());
  const GaussianState coupled =
      loss_channel(input, 0, config.input_visibility * config.input_visibility);
  return apply_symplectic(tensor_product(coupled, epr),
                          make_symplectic(Beamsplitter{0.5}, std::array<std::size_t, 2>{0, 1}, 3));
}

GaussianState teleport_network(const GaussianState& input, const TeleportConfig& config) {
  if (input.n_modes() != 1) throw InvalidArgument("teleportation input must be a single mode");
  const GaussianState sources =
      tensor_product(loss_channel(input, 0, config.input_visibility * config.input_visibility),
                     resource_sources(config.resource_noise()));
  // (input, source 1, source 2) -> (input, Alice, Bob) -> (sum port, difference port, Bob).
  const SymplecticTransform optics =
      make_symplectic(Beamsplitter{0.5}, std::array<std::size_t, 2>{0, 1}, 3) *
      make_symplectic(Beamsplitter{0.5}, std::array<std::size_t, 2>{1, 2}, 3);
  // Heisenberg picture of Bob's displacement:
  //   x_out = x_bob + g_x sqrt2 x_diff,  p_out = p_bob + g_p sqrt2 p_sum.
  Eigen::MatrixXd feed = Eigen::MatrixXd::Zero(2, 6);
  feed(0, 4) = 1.0;
  feed(0, 2) = config.g_x * kFeedforwardScale;
  feed(1, 5) = 1.0;
  feed(1, 1) = config.g_p * kFeedforwardScale;
  const Eigen::MatrixXd map = feed * optics.matrix();
  Eigen::MatrixXd cov = map * sources.cov() * map.transpose();
  cov(1, 0) = cov(0, 1);
  return {map * sources.mean(), std::move(cov)};
}

LegSqueezing infer_resource_from_vacuum_run(const QuadPair& vacuum_output,
                                            const TeleportConfig& config) {
  config.validate();
  const double anti = std::exp(2.0 * config.r_plus);
  const auto leg = [&](double sigma_out, double g) {
    if (g == -1.0) throw InvalidArgument("resource noise is unobservable at gain -1");
    const double residual =
        sigma_out - g * g * kVacuumVariance - anti * (1.0 - g) * (1.0 - g) / 8.0;
    const double factor = 8.0 * residual / ((1.0 + g) * (1.0 + g));
    if (!(factor > 0.0)) {
      throw InconsistentMeasurement("vacuum-run output lies below the ideal-resource floor");
    }
    return factor;
  };
  return {leg(vacuum_output.sigma_x, config.g_x), leg(vacuum_output.sigma_p, config.g_p)};
}

VarianceOrdering check_variance_ordering(const QuadPair& vac_out, const QuadPair& sq_out) {
  return {sq_out.sigma_x < vac_out.sigma_x, sq_out.sigma_p > vac_out.sigma_p};
}

}  // namespace cvtele
