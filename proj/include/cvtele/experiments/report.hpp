#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cvtele/experiments/scenario.hpp"
#include "cvtele/fidelity.hpp"
#include "cvtele/montecarlo.hpp"

namespace cvtele::experiments {

struct LabeledFidelity {
  std::string reference;  // "model" (computed output) or "measured"
  FidelityReport report;
};

struct ScenarioReport {
  std::string name;
  RunMode mode = RunMode::analytic;
  QuadPair input;
  QuadPair output;
  // Same channel, vacuum input; feeds the squeezed-vs-vacuum ordering check.
  QuadPair vacuum_output;
  std::optional<QuadPair> output_standard_error;  // Monte-Carlo runs only
  std::optional<mc::GainEstimate> gains;          // Monte-Carlo runs with a displaced input
  double duan = 1.0;
  VarianceOrdering ordering{};
  std::vector<LabeledFidelity> fidelities;
};

struct RunOverrides {
  std::optional<std::uint64_t> seed;
};

ScenarioReport run_scenario(const Scenario& scenario, RunOverrides overrides = {});

/// Aligned plain-text table for terminals.
std::string format_table(const ScenarioReport& report);

/// `quantity,value,db` rows; every dB value sits next to its linear variance.
std::string format_csv(const ScenarioReport& report);

}  // namespace cvtele::experiments
