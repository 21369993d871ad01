#include "cvtele/experiments/scenario.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "cvtele/errors.hpp"

namespace cvtele::experiments {

namespace {

std::string format_location(const std::string& source, std::size_t line, std::size_t column) {
  return source + ":" + std::to_string(line) + ":" + std::to_string(column);
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r'; }

struct Cursor {
  const std::string& source;
  std::size_t line;
  std::size_t column;

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(source, line, column, what); }
};

double parse_double(std::string_view text, const Cursor& at) {
  double value = 0.0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end || !std::isfinite(value)) {
    at.fail("expected a number, got '" + std::string(text) + "'");
  }
  return value;
}

std::uint64_t parse_unsigned(std::string_view text, const Cursor& at) {
  std::uint64_t value = 0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    at.fail("expected a non-negative integer, got '" + std::string(text) + "'");
  }
  return value;
}

bool parse_bool(std::string_view text, const Cursor& at) {
  if (text == "true") return true;
  if (text == "false") return false;
  at.fail("expected true or false, got '" + std::string(text) + "'");
}

using Setter = std::function<void(Scenario&, std::string_view, const Cursor&)>;

const std::map<std::string, Setter, std::less<>>& setters() {
  static const std::map<std::string, Setter, std::less<>> table = [] {
    std::map<std::string, Setter, std::less<>> t;
    t["name"] = [](Scenario& s, std::string_view v, const Cursor&) { s.name = std::string(v); };
    t["input.kind"] = [](Scenario& s, std::string_view v, const Cursor& at) {
      if (v == "vacuum") {
        s.input.kind = InputKind::vacuum;
      } else if (v == "squeezed_thermal") {
        s.input.kind = InputKind::squeezed_thermal;
      } else {
        at.fail("input.kind must be vacuum or squeezed_thermal");
      }
    };
    t["input.sigma_x_db"] = [](Scenario& s, std::string_view v, const Cursor& at) {
      s.input.sigma_x_db = parse_double(v, at);
    };
    t["input.sigma_p_db"] = [](Scenario& s, std::string_view v, const Cursor& at) {
      s.input.sigma_p_db = parse_double(v, at);
    };
    t["input.r"] = [](Scenario& s, std::string_view v, const Cursor& at) { s.input.r = parse_double(v, at); };
    t["input.tau_db"] = [](Scenario& s, std::string_view v, const Cursor& at) {
      s.input.tau_db = parse_double(v, at);
    };
    t["input.visibility"] = [](Scenario& s, std::string_view v, const Cursor& at) {
      s.input.visibility = parse_double(v, at);
    };
    t["input.alpha_re"] = [](Scenario& s, std::string_view v, const Cursor& at) {
      s.input.alpha.real(parse_double(v, at));
    };
    t["input.alpha_im"] = [](Scenario& s, std::string_view v, const Cursor& at) {
      s.input.alpha.imag(parse_double(v, at));
    };
    t["resource.epr_enabled"] = [](Scenario& s, std::string_view v, const Cursor& at) {
      s.resource.epr_enabled = parse_bool(v, at);
    };
    t["resource.r_minus"] = [](Scenario& s, std::string_view v, const Cursor& at) {
      s.resource.r_minus = parse_double(v, at);
    };
    t["resource.r_plus"] = [](Scenario& s, std::string_view v, const Cursor& at) {
      s.resource.r_plus = parse_double(v, at);
    };
    t["resource.x_leg_squeeze"] = [](Scenario& s, std::string_view v, const Cursor& at) {
      s.resource.x_leg_squeeze = parse_double(v, at);
    };
    t["resource.p_leg_squeeze"] = [](Scenario& s, std::string_view v, const Cursor& at) {
      s.resource.p_leg_squeeze = parse_double(v, at);
    };
    t["resource.vacuum_out_x_db"] = [](Scenario& s, std::string_view v, const Cursor& at) {
      s.resource.vacuum_out_x_db = parse_double(v, at);
    };
    t["resource.vacuum_out_p_db"] = [](Scenario& s, std::string_view v, const Cursor& at) {
      s.resource.vacuum_out_p_db = parse_double(v, at);
    };
    t["gains.g_x"] = [](Scenario& s, std::string_view v, const Cursor& at) { s.g_x = parse_double(v, at); };
    t["gains.g_p"] = [](Scenario& s, std::string_view v, const Cursor& at) { s.g_p = parse_double(v, at); };
    t["channel.input_visibility"] = [](Scenario& s, std::string_view v, const Cursor& at) {
      s.channel_visibility = parse_double(v, at);
    };
    t["run.mode"] = [](Scenario& s, std::string_view v, const Cursor& at) {
      if (v == "analytic") {
        s.run.mode = RunMode::analytic;
      } else if (v == "network") {
        s.run.mode = RunMode::network;
      } else if (v == "montecarlo") {
        s.run.mode = RunMode::montecarlo;
      } else {
        at.fail("run.mode must be analytic, network or montecarlo");
      }
    };
    t["run.shots"] = [](Scenario& s, std::string_view v, const Cursor& at) {
      s.run.shots = parse_unsigned(v, at);
      if (s.run.shots < 2) at.fail("run.shots must be at least 2");
    };
    t["run.seed"] = [](Scenario& s, std::string_view v, const Cursor& at) { s.run.seed = parse_unsigned(v, at); };
    t["measured.sigma_x_db"] = [](Scenario& s, std::string_view v, const Cursor& at) {
      if (!s.measured) s.measured = MeasuredSection{NAN, NAN};
      s.measured->sigma_x_db = parse_double(v, at);
    };
    t["measured.sigma_p_db"] = [](Scenario& s, std::string_view v, const Cursor& at) {
      if (!s.measured) s.measured = MeasuredSection{NAN, NAN};
      s.measured->sigma_p_db = parse_double(v, at);
    };
    return t;
  }();
  return table;
}

std::size_t skip_space(std::string_view line, std::size_t pos) {
  while (pos < line.size() && is_space(line[pos])) ++pos;
  return pos;
}

std::size_t trim_end(std::string_view line, std::size_t end) {
  while (end > 0 && is_space(line[end - 1])) --end;
  return end;
}

}  // namespace

ParseError::ParseError(std::string source, std::size_t line, std::size_t column, const std::string& what)
    : std::runtime_error(format_location(source, line, column) + ": " + what), line_(line), column_(column) {}

std::string_view mode_name(RunMode mode) {
  switch (mode) {
    case RunMode::analytic:
      return "analytic";
    case RunMode::network:
      return "network";
    case RunMode::montecarlo:
      return "montecarlo";
  }
  return "unknown";
}

Scenario parse_scenario(std::string_view text, const std::string& source) {
  Scenario scenario;
  std::set<std::string, std::less<>> seen;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t nl = text.find('\n', start);
    const std::size_t stop = nl == std::string_view::npos ? text.size() : nl;
    std::string_view line = text.substr(start, stop - start);
    ++line_no;
    start = stop + 1;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const std::size_t key_begin = skip_space(line, 0);
    if (key_begin == line.size()) {
      if (nl == std::string_view::npos) break;
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      Cursor{source, line_no, key_begin + 1}.fail("expected 'key = value'");
    }
    const std::string_view key = line.substr(key_begin, trim_end(line, eq) - key_begin);
    const std::size_t value_begin = skip_space(line, eq + 1);
    const std::string_view value = line.substr(value_begin, trim_end(line, line.size()) - value_begin);
    const Cursor key_at{source, line_no, key_begin + 1};
    const Cursor value_at{source, line_no, value_begin + 1};

    if (key.empty()) key_at.fail("missing key before '='");
    const auto it = setters().find(key);
    if (it == setters().end()) key_at.fail("unknown key '" + std::string(key) + "'");
    if (!seen.insert(std::string(key)).second) key_at.fail("duplicate key '" + std::string(key) + "'");
    if (value.empty()) value_at.fail("missing value for '" + std::string(key) + "'");
    it->second(scenario, value, value_at);

    if (nl == std::string_view::npos) break;
  }

  const Cursor at_end{source, line_no, 1};
  const bool has_db = scenario.input.sigma_x_db || scenario.input.sigma_p_db;
  const bool has_params = scenario.input.r || scenario.input.tau_db;
  if (scenario.input.kind == InputKind::squeezed_thermal) {
    if (has_db && has_params) at_end.fail("give either input.sigma_*_db or input.r/tau_db, not both");
    if (has_db && !(scenario.input.sigma_x_db && scenario.input.sigma_p_db)) {
      at_end.fail("squeezed_thermal input needs both input.sigma_x_db and input.sigma_p_db");
    }
    if (has_params && !(scenario.input.r && scenario.input.tau_db)) {
      at_end.fail("squeezed_thermal input needs both input.r and input.tau_db");
    }
    if (!has_db && !has_params) at_end.fail("squeezed_thermal input needs its variances");
  } else if (has_db || has_params) {
    at_end.fail("vacuum input takes no variance keys");
  }
  if (scenario.measured && (std::isnan(scenario.measured->sigma_x_db) || std::isnan(scenario.measured->sigma_p_db))) {
    at_end.fail("measured output needs both measured.sigma_x_db and measured.sigma_p_db");
  }
  const bool vac_x = scenario.resource.vacuum_out_x_db.has_value();
  if (vac_x != scenario.resource.vacuum_out_p_db.has_value()) {
    at_end.fail("resource.vacuum_out_x_db and resource.vacuum_out_p_db go together");
  }
  if (vac_x && (scenario.resource.x_leg_squeeze || scenario.resource.p_leg_squeeze)) {
    at_end.fail("give either per-leg squeezing or a vacuum-run output, not both");
  }
  return scenario;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path.string(), 0, 0, "cannot open scenario file");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_scenario(text.str(), path.string());
}

ResolvedScenario resolve(const Scenario& scenario) {
  const InputSection& in = scenario.input;
  QuadPair variances{kVacuumVariance, kVacuumVariance};
  if (in.kind == InputKind::squeezed_thermal) {
    if (in.sigma_x_db) {
      variances = {visibility_correct(from_db(*in.sigma_x_db), in.visibility),
                   visibility_correct(from_db(*in.sigma_p_db), in.visibility)};
    } else {
      const double tau = std::pow(10.0, *in.tau_db / 10.0);
      if (tau < 1.0) throw UnphysicalError("input.tau_db must be >= 0 (tau >= 1)");
      variances = {std::exp(-2.0 * *in.r) * tau * kVacuumVariance,
                   std::exp(2.0 * *in.r) * tau * kVacuumVariance};
    }
  }
  if (!variances.is_physical()) {
    throw UnphysicalError("input variances violate sigma_x * sigma_p >= 1/16");
  }
  GaussianState input = displace(diagonal_state(variances), 0, in.alpha);

  TeleportConfig config;
  config.g_x = scenario.g_x;
  config.g_p = scenario.g_p;
  config.epr_enabled = scenario.resource.epr_enabled;
  config.input_visibility = scenario.channel_visibility;
  config.r_minus = scenario.resource.r_minus;
  config.x_leg_squeeze = scenario.resource.x_leg_squeeze;
  config.p_leg_squeeze = scenario.resource.p_leg_squeeze;
  if (scenario.resource.r_plus) {
    config.r_plus = *scenario.resource.r_plus;
  }
  if (scenario.resource.vacuum_out_x_db) {
    const LegSqueezing legs = infer_resource_from_vacuum_run(
        QuadPair::from_db(*scenario.resource.vacuum_out_x_db, *scenario.resource.vacuum_out_p_db),
        config);
    config.x_leg_squeeze = legs.x_leg;
    config.p_leg_squeeze = legs.p_leg;
  }
  if (!scenario.resource.r_plus) {
    // Pure resource: antisqueezing matches the strongest squeezing in use.
    double squeezed = std::exp(-2.0 * config.r_minus);
    if (config.x_leg_squeeze) squeezed = std::min(squeezed, *config.x_leg_squeeze);
    if (config.p_leg_squeeze) squeezed = std::min(squeezed, *config.p_leg_squeeze);
    config.r_plus = std::max(0.0, -0.5 * std::log(squeezed));
  }
  try {
    config.validate();
  } catch (const InvalidArgument& e) {
    throw UnphysicalError(e.what());
  }
  if (config.epr_enabled) {
    const ResourceNoise noise = config.resource_noise();
    if (noise.x_squeezed * noise.antisqueezed < 1.0 - kPhysicalTolerance ||
        noise.p_squeezed * noise.antisqueezed < 1.0 - kPhysicalTolerance) {
      throw UnphysicalError("resource squeezing exceeds what its antisqueezing allows "
                            "(e^{-2r-} e^{+2r+} < 1)");
    }
  }
  return {std::move(input), variances, config};
}

}  // namespace cvtele::experiments
