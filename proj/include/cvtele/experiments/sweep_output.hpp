#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "cvtele/fidelity.hpp"

namespace cvtele::experiments {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Measured quantum fidelity drawn as a cross on the sweep plots, at the
/// input's own coth(beta/2) = 2.39 dB or e^{+2r} = 5.06 dB.
inline constexpr double kMeasuredQuantumFidelity = 0.85;
inline constexpr double kMeasuredTauDb = 2.39;
inline constexpr double kMeasuredAntisqueezeDb = 5.06;

/// `abscissa_db,fidelity` with 9 significant digits and LF endings.
std::string sweep_csv(const std::vector<SweepPoint>& points);

/// Self-contained SVG line plot of the sweep with the measured-fidelity marker.
std::string sweep_svg(const std::vector<SweepPoint>& points, SweepAxis axis, double fixed_db);

/// Writes `contents` to `path`; throws IoError if the file cannot be written.
void write_file(const std::filesystem::path& path, const std::string& contents);

}  // namespace cvtele::experiments
