#include "cvtele/experiments/report.hpp"

#include <fmt/format.h>

namespace cvtele::experiments {

namespace {

QuadPair propagate(const ResolvedScenario& resolved, const GaussianState& input, const QuadPair& sigma,
                   RunMode mode, std::uint64_t seed, std::size_t shots,
                   std::optional<QuadPair>* standard_error = nullptr,
                   std::optional<mc::GainEstimate>* gains = nullptr) {
  switch (mode) {
    case RunMode::analytic:
      return teleport_variances_analytic(sigma, resolved.config);
    case RunMode::network:
      return teleport_network(input, resolved.config).variances(0);
    case RunMode::montecarlo: {
      const auto records = mc::run_shots(input, resolved.config, shots, seed);
      const auto estimate = mc::estimate_variances(records);
      if (standard_error) *standard_error = estimate.standard_error;
      const std::complex<double> alpha(input.mean()(0), input.mean()(1));
      if (gains && alpha != std::complex<double>{}) *gains = mc::estimate_gain(records, alpha);
      return estimate.variance;
    }
  }
  return sigma;
}

void add_fidelities(std::vector<LabeledFidelity>& out, const std::string& reference, bool vacuum_input,
                    const QuadPair& input, const QuadPair& output) {
  if (vacuum_input) {
    out.push_back({reference, fidelity_vacuum(output)});
  } else {
    out.push_back({reference, fidelity_squeezed_thermal(input, output)});
  }
  out.push_back({reference, fidelity_gaussian_oracle(diagonal_state(input), diagonal_state(output))});
}

std::string g9(double v) { return fmt::format("{:.9g}", v); }

}  // namespace

ScenarioReport run_scenario(const Scenario& scenario, RunOverrides overrides) {
  const ResolvedScenario resolved = resolve(scenario);
  const std::uint64_t seed = overrides.seed.value_or(scenario.run.seed);
  const bool vacuum_input = scenario.input.kind == InputKind::vacuum;

  ScenarioReport report;
  report.name = scenario.name;
  report.mode = scenario.run.mode;
  report.input = resolved.input_variances;
  report.output = propagate(resolved, resolved.input, resolved.input_variances, scenario.run.mode, seed,
                            scenario.run.shots, &report.output_standard_error, &report.gains);
  report.vacuum_output = propagate(resolved, vacuum_state(1), QuadPair{}, scenario.run.mode, seed,
                                   scenario.run.shots);
  report.duan = resolved.config.epr_enabled ? duan_sum(make_epr(resolved.config.resource_noise())) : 1.0;
  report.ordering = check_variance_ordering(report.vacuum_output, report.output);

  add_fidelities(report.fidelities, "model", vacuum_input, report.input, report.output);
  if (scenario.measured) {
    add_fidelities(report.fidelities, "measured", vacuum_input, report.input,
                   QuadPair::from_db(scenario.measured->sigma_x_db, scenario.measured->sigma_p_db));
  }
  return report;
}

std::string format_table(const ScenarioReport& report) {
  std::string out;
  auto line = [&out](const std::string& s) { out += s + '\n'; };
  line(fmt::format("scenario: {}  (mode: {})", report.name.empty() ? "-" : report.name,
                   mode_name(report.mode)));
  line(fmt::format("{:<22} {:>14} {:>10} {:>14} {:>10}", "", "sigma_x", "dB", "sigma_p", "dB"));
  const auto row = [&](const std::string& label, const QuadPair& q) {
    line(fmt::format("{:<22} {:>14.6f} {:>10.3f} {:>14.6f} {:>10.3f}", label, q.sigma_x, q.sigma_x_db(),
                     q.sigma_p, q.sigma_p_db()));
  };
  row("input", report.input);
  row("output", report.output);
  if (report.output_standard_error) {
    line(fmt::format("{:<22} {:>14.6f} {:>10} {:>14.6f} {:>10}", "  standard error",
                     report.output_standard_error->sigma_x, "", report.output_standard_error->sigma_p, ""));
  }
  row("vacuum-input output", report.vacuum_output);
  line(fmt::format("resource Duan sum      {:.4f}{}", report.duan, report.duan < 1.0 ? "  (entangled)" : ""));
  line(fmt::format("ordering vs vacuum     x reduced: {}, p increased: {}", report.ordering.x_reduced,
                   report.ordering.p_increased));
  if (report.gains) {
    line(fmt::format("estimated gains        g_x = {:.4f} +/- {:.1e}, g_p = {:.4f} +/- {:.1e}", report.gains->g_x,
                     report.gains->se_x, report.gains->g_p, report.gains->se_p));
  }
  for (const auto& f : report.fidelities) {
    line(fmt::format("fidelity [{:<8}] {:<17} {:.4f}", f.reference, method_name(f.report.method), f.report.value));
  }
  return out;
}

std::string format_csv(const ScenarioReport& report) {
  std::string out = "quantity,value,db\n";
  const auto variance = [&](const std::string& name, double v) { out += name + ',' + g9(v) + ',' + g9(to_db(v)) + '\n'; };
  const auto scalar = [&](const std::string& name, double v) { out += name + ',' + g9(v) + ",\n"; };
  variance("input_sigma_x", report.input.sigma_x);
  variance("input_sigma_p", report.input.sigma_p);
  variance("output_sigma_x", report.output.sigma_x);
  variance("output_sigma_p", report.output.sigma_p);
  if (report.output_standard_error) {
    scalar("output_sigma_x_se", report.output_standard_error->sigma_x);
    scalar("output_sigma_p_se", report.output_standard_error->sigma_p);
  }
  variance("vacuum_output_sigma_x", report.vacuum_output.sigma_x);
  variance("vacuum_output_sigma_p", report.vacuum_output.sigma_p);
  scalar("duan_sum", report.duan);
  scalar("ordering_x_reduced", report.ordering.x_reduced ? 1.0 : 0.0);
  scalar("ordering_p_increased", report.ordering.p_increased ? 1.0 : 0.0);
  if (report.gains) {
    scalar("gain_x", report.gains->g_x);
    scalar("gain_p", report.gains->g_p);
  }
  for (const auto& f : report.fidelities) {
    scalar(fmt::format("fidelity_{}_{}", f.reference, method_name(f.report.method)), f.report.value);
  }
  return out;
}

}  // namespace cvtele::experiments
