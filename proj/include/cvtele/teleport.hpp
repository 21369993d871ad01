#pragma once

#include <numbers>
#include <optional>

#include "cvtele/gaussian.hpp"

namespace cvtele {

/// Noise factors of the two resource squeezers, in units of the vacuum variance.
///
/// The x-leg of the protocol sees `x_squeezed` (e^{-2 r_minus} of the
/// x-squeezed source) and the p-leg sees `p_squeezed`; both legs share the
/// antisqueezing factor e^{+2 r_plus}.
struct ResourceNoise {
  double x_squeezed = 1.0;
  double p_squeezed = 1.0;
  double antisqueezed = 1.0;
};

struct TeleportConfig {
  double r_minus = 0.0;
  double r_plus = 0.0;
  double g_x = 1.0;
  double g_p = 1.0;
  // false: vacuum replaces the EPR beams (classical teleportation).
  bool epr_enabled = true;
  // Mode matching of the input onto Alice's beamsplitter; loss eta = visibility^2.
  double input_visibility = 1.0;
  // Per-leg e^{-2 r_minus} overrides for asymmetric resources.
  std::optional<double> x_leg_squeeze;
  std::optional<double> p_leg_squeeze;

  /// Throws InvalidArgument on negative squeezing, non-finite gains or a
  /// visibility outside (0, 1].
  void validate() const;

  ResourceNoise resource_noise() const;
};

/// Alice's outcome is scaled by this factor before Bob's displacement, so
/// unity gain reconstructs the input mean.
inline constexpr double kFeedforwardScale = std::numbers::sqrt2;

/// Two-mode EPR state from two squeezed sources on a 50/50 beamsplitter.
///
/// Source 1 carries the pi/2 phase shift (squeezed in p), source 2 is
/// squeezed in x; beamsplitter outputs are mode 0 (Alice, (a+b)/sqrt2) and
/// mode 1 (Bob, (a-b)/sqrt2). x_A - x_B and p_A + p_B are then the
/// squeezed combinations.
GaussianState make_epr(double r_minus, double r_plus);

/// The two squeezed sources before they meet on the EPR beamsplitter:
/// mode 0 squeezed in p (the pi/2-shifted source), mode 1 squeezed in x.
GaussianState resource_sources(const ResourceNoise& noise);

GaussianState make_epr(const ResourceNoise& noise);

/// Normalized inseparability sum (Var(x1-x2) + Var(p1+p2)) / 1; two vacua give 1.
double duan_sum(const GaussianState& two_mode);

/// Closed-form output variances for unity-normalized classical channels.
QuadPair teleport_variances_analytic(const QuadPair& input, const TeleportConfig& config);

/// Three-mode state (input, Alice's EPR half, Bob's EPR half) after the input
/// loss and Alice's 50/50 beamsplitter. Mode 0 is the sum port where p is
/// measured, mode 1 the difference port where x is measured.
GaussianState bell_measurement_state(const GaussianState& input, const TeleportConfig& config);

/// Unconditional output state from the full linear-optics network.
///
/// The beamsplitters and feedforward are composed into a single linear map
/// on (input, source 1, source 2) before it touches any covariance, so
/// strongly squeezed resources do not cancel catastrophically.
GaussianState teleport_network(const GaussianState& input, const TeleportConfig& config);

struct VarianceOrdering {
  bool x_reduced;    // (sigma_out^x)_sq < (sigma_out^x)_vac
  bool p_increased;  // (sigma_out^p)_sq > (sigma_out^p)_vac
};

/// Effective e^{-2 r_minus} per leg recovered from the output variances of
/// a vacuum-input run, given that run's gains and antisqueezing.
struct LegSqueezing {
  double x_leg;
  double p_leg;
};

LegSqueezing infer_resource_from_vacuum_run(const QuadPair& vacuum_output,
                                            const TeleportConfig& config);

VarianceOrdering check_variance_ordering(const QuadPair& vac_out, const QuadPair& sq_out);

}  // namespace cvtele
