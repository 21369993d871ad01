#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "cvtele/gaussian.hpp"

namespace cvtele {

/// Squeezing r and thermal factor tau = coth(beta/2) of a zero-mean squeezed
/// thermal state with variances e^{-2r} tau / 4 and e^{+2r} tau / 4.
struct SqueezedThermalParams {
  double r = 0.0;
  double tau = 1.0;

  /// Inverse temperature ln((tau+1)/(tau-1)); +inf for a pure state.
  double beta() const;
  QuadPair variances() const;
};

enum class FidelityMethod { vacuum_overlap, squeezed_thermal, general_gaussian };

std::string_view method_name(FidelityMethod method);

struct FidelityReport {
  double value = 0.0;
  FidelityMethod method = FidelityMethod::general_gaussian;
  std::optional<SqueezedThermalParams> input_params;
  std::optional<SqueezedThermalParams> output_params;
};

/// r = ln(sigma_p / sigma_x) / 4, tau = 4 sqrt(sigma_x sigma_p).
/// Throws UnphysicalError when sigma_x * sigma_p < 1/16.
SqueezedThermalParams extract_params(const QuadPair& sigma);

/// Overlap of the vacuum with a zero-mean state of variances `out`.
FidelityReport fidelity_vacuum(const QuadPair& out);

/// Fidelity of two co-aligned zero-mean squeezed thermal states.
///
/// Evaluated as 2 / (sqrt(Y') - sqrt((tau_a^2 - 1)(tau_b^2 - 1))) with
///   Y' = cosh^2(dr) (tau_a tau_b + 1)^2 - sinh^2(dr) (tau_a tau_b - 1)^2,
/// which stays finite at the pure-state boundary tau = 1 where the
/// sinh(beta/2) form is 0/0.
FidelityReport fidelity_squeezed_thermal(const SqueezedThermalParams& a,
                                         const SqueezedThermalParams& b);

/// Convenience overload: extracts parameters from both variance pairs.
FidelityReport fidelity_squeezed_thermal(const QuadPair& a, const QuadPair& b);

/// Uhlmann fidelity of two arbitrary single-mode Gaussian states, including
/// the mean-offset factor.
FidelityReport fidelity_gaussian_oracle(const GaussianState& a, const GaussianState& b);

enum class SweepAxis { tau_db, antisqueeze_db };

struct SweepPoint {
  double abscissa_db;
  double fidelity;
};

/// Fidelity of perfect classical teleportation (vacuum resource, unity gain)
/// for inputs with one of tau, e^{+2r} swept and the other held at
/// `fixed_db`. Points are equally spaced from lo_db to hi_db inclusive.
std::vector<SweepPoint> classical_fidelity_sweep(SweepAxis axis, double fixed_db, double lo_db,
                                                 double hi_db, std::size_t steps);

}  // namespace cvtele
