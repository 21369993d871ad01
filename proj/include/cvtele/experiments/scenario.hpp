#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "cvtele/gaussian.hpp"
#include "cvtele/teleport.hpp"

namespace cvtele::experiments {

/// Syntax or schema problem in a scenario file. Line and column are 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string source, std::size_t line, std::size_t column, const std::string& what);

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

enum class InputKind { vacuum, squeezed_thermal };
enum class RunMode { analytic, network, montecarlo };

std::string_view mode_name(RunMode mode);

struct InputSection {
  InputKind kind = InputKind::vacuum;
  // Measured variances in dB; corrected with `visibility` when below 1.
  std::optional<double> sigma_x_db;
  std::optional<double> sigma_p_db;
  // Alternative parametrization: squeezing r and tau in dB.
  std::optional<double> r;
  std::optional<double> tau_db;
  double visibility = 1.0;
  std::complex<double> alpha;
};

struct ResourceSection {
  bool epr_enabled = true;
  double r_minus = 0.0;
  std::optional<double> r_plus;  // defaults to r_minus
  std::optional<double> x_leg_squeeze;
  std::optional<double> p_leg_squeeze;
  // Output of a vacuum-input run in dB; per-leg squeezing is inferred from it.
  std::optional<double> vacuum_out_x_db;
  std::optional<double> vacuum_out_p_db;
};

struct RunSection {
  RunMode mode = RunMode::analytic;
  std::size_t shots = 100000;
  std::uint64_t seed = 1;
};

/// Optional measured output to compare against the input.
struct MeasuredSection {
  double sigma_x_db;
  double sigma_p_db;
};

/// A teleportation experiment described by a `key = value` file.
///
/// Keys are dotted: `input.*`, `resource.*`, `gains.g_x`, `gains.g_p`,
/// `channel.input_visibility`, `run.*`, `measured.*` and a top-level
/// `name`. `#` starts a comment. Unknown and duplicate keys are rejected.
struct Scenario {
  std::string name;
  InputSection input;
  ResourceSection resource;
  double g_x = 1.0;
  double g_p = 1.0;
  double channel_visibility = 1.0;
  RunSection run;
  std::optional<MeasuredSection> measured;
};

Scenario parse_scenario(std::string_view text, const std::string& source = "<scenario>");

/// Reads and parses a file. An unreadable file is reported as a ParseError at line 0.
Scenario load_scenario(const std::filesystem::path& path);

/// Physical quantities a scenario describes.
struct ResolvedScenario {
  GaussianState input;
  QuadPair input_variances;
  TeleportConfig config;
};

/// Throws UnphysicalError or InconsistentMeasurement when the numbers do not
/// describe a physical input or resource.
ResolvedScenario resolve(const Scenario& scenario);

}  // namespace cvtele::experiments
