#include "cvtele/experiments/reproduce.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "cvtele/fidelity.hpp"
#include "cvtele/montecarlo.hpp"
#include "cvtele/teleport.hpp"

namespace cvtele::experiments {

namespace {

// Reported measurements (dB relative to shot noise).
constexpr double kInputSqueezingDb = -2.66;
constexpr double kInputAntisqueezingDb = 7.45;
constexpr double kInputVisibility = 0.968;
constexpr double kClassicalVacuumOutXDb = 4.86;
constexpr double kClassicalVacuumOutPDb = 4.92;
constexpr double kClassicalSqueezedOutXDb = 4.12;
constexpr double kClassicalSqueezedOutPDb = 8.92;
constexpr double kQuantumVacuumOutXDb = 2.90;
constexpr double kQuantumVacuumOutPDb = 3.01;
constexpr double kQuantumSqueezedOutXDb = 2.03;
constexpr double kQuantumSqueezedOutPDb = 8.18;
constexpr double kEprSqueezing = 0.47;  // e^{-2r} behind the reported Duan sum
constexpr double kReportedGain = 0.98;

class RowBuilder {
 public:
  void within(std::string name, std::string published, double target, double computed, double tol) {
    rows_.push_back({std::move(name), std::move(published), target, computed, tol, Check::within,
                     std::abs(computed - target) <= tol});
  }
  void above(std::string name, std::string published, double bound, double computed) {
    rows_.push_back({std::move(name), std::move(published), bound, computed, 0.0, Check::above, computed > bound});
  }
  void holds(std::string name, std::string published, bool value) {
    rows_.push_back({std::move(name), std::move(published), 1.0, value ? 1.0 : 0.0, 0.0, Check::holds, value});
  }
  std::vector<AnchorRow> take() { return std::move(rows_); }

 private:
  std::vector<AnchorRow> rows_;
};

}  // namespace

std::vector<AnchorRow> reproduce_paper() {
  RowBuilder rows;

  const QuadPair measured_input = QuadPair::from_db(kInputSqueezingDb, kInputAntisqueezingDb);
  const QuadPair corrected_input{visibility_correct(measured_input.sigma_x, kInputVisibility),
                                 visibility_correct(measured_input.sigma_p, kInputVisibility)};
  rows.within("input squeezing after visibility correction [dB]", "-2.92 +/- 0.56", -2.92,
              corrected_input.sigma_x_db(), 0.02);
  rows.within("input antisqueezing after visibility correction [dB]", "7.68 +/- 0.27", 7.68,
              corrected_input.sigma_p_db(), 0.02);

  const SqueezedThermalParams measured_params = extract_params(measured_input);
  rows.within("input coth(beta/2) [dB]", "2.39 +/- 0.31", 2.39, 10.0 * std::log10(measured_params.tau), 0.31);
  rows.within("input e^{+2r} [dB]", "5.06 +/- 0.26", 5.06, 20.0 * measured_params.r / std::log(10.0), 0.26);

  // Classical teleportation: vacuum instead of EPR beams, unity gain.
  TeleportConfig classical;
  classical.epr_enabled = false;
  const QuadPair classical_vac = teleport_variances_analytic(QuadPair{}, classical);
  rows.within("classical vacuum output x, analytic [dB]", "4.77", 4.77, classical_vac.sigma_x_db(), 0.01);
  rows.within("classical vacuum output p, analytic [dB]", "4.77", 4.77, classical_vac.sigma_p_db(), 0.01);
  rows.within("classical vacuum output x vs measured [dB]", "4.86 +/- 0.20", kClassicalVacuumOutXDb,
              classical_vac.sigma_x_db(), 0.20);
  rows.within("classical vacuum output p vs measured [dB]", "4.92 +/- 0.20", kClassicalVacuumOutPDb,
              classical_vac.sigma_p_db(), 0.20);
  rows.within("classical vacuum fidelity", "0.5", 0.5, fidelity_vacuum(classical_vac).value, 1e-12);

  const QuadPair classical_sq = teleport_variances_analytic(corrected_input, classical);
  rows.within("classical squeezed output x vs measured [dB]", "4.12 +/- 0.23", kClassicalSqueezedOutXDb,
              classical_sq.sigma_x_db(), 0.23);
  rows.within("classical squeezed output p vs measured [dB]", "8.92 +/- 0.16", kClassicalSqueezedOutPDb,
              classical_sq.sigma_p_db(), 0.16);

  const QuadPair quantum_vac = QuadPair::from_db(kQuantumVacuumOutXDb, kQuantumVacuumOutPDb);
  rows.within("quantum vacuum fidelity", "0.67 +/- 0.02", 0.67, fidelity_vacuum(quantum_vac).value, 0.02);

  const QuadPair quantum_sq = QuadPair::from_db(kQuantumSqueezedOutXDb, kQuantumSqueezedOutPDb);
  const QuadPair classical_sq_measured = QuadPair::from_db(kClassicalSqueezedOutXDb, kClassicalSqueezedOutPDb);
  rows.within("quantum squeezed fidelity (corrected input)", "0.85 +/- 0.05", 0.85,
              fidelity_squeezed_thermal(corrected_input, quantum_sq).value, 0.05);
  rows.within("quantum squeezed fidelity (measured input)", "0.85 +/- 0.05", 0.85,
              fidelity_squeezed_thermal(measured_input, quantum_sq).value, 0.05);
  rows.within("classical squeezed fidelity (corrected input)", "0.73 +/- 0.04", 0.73,
              fidelity_squeezed_thermal(corrected_input, classical_sq_measured).value, 0.04);
  rows.within("classical squeezed fidelity (measured input)", "0.73 +/- 0.04", 0.73,
              fidelity_squeezed_thermal(measured_input, classical_sq_measured).value, 0.04);

  // Expected quantum outputs, resource inferred from the quantum vacuum run.
  TeleportConfig quantum;
  const LegSqueezing legs = infer_resource_from_vacuum_run(quantum_vac, quantum);
  quantum.x_leg_squeeze = legs.x_leg;
  quantum.p_leg_squeeze = legs.p_leg;
  const QuadPair expected_sq = teleport_variances_analytic(corrected_input, quantum);
  rows.within("expected quantum squeezed output x [dB]", "1.71 +/- 0.58", 1.71, expected_sq.sigma_x_db(), 0.58);
  rows.within("expected quantum squeezed output p [dB]", "8.24 +/- 0.31", 8.24, expected_sq.sigma_p_db(), 0.31);

  const VarianceOrdering measured_order = check_variance_ordering(quantum_vac, quantum_sq);
  rows.holds("ordering, measured quantum: x_sq < x_vac", "holds", measured_order.x_reduced);
  rows.holds("ordering, measured quantum: p_sq > p_vac", "holds", measured_order.p_increased);
  const VarianceOrdering classical_order = check_variance_ordering(classical_vac, classical_sq);
  rows.holds("ordering, analytic classical: x_sq < x_vac", "holds", classical_order.x_reduced);
  rows.holds("ordering, analytic classical: p_sq > p_vac", "holds", classical_order.p_increased);
  const VarianceOrdering quantum_order =
      check_variance_ordering(teleport_variances_analytic(QuadPair{}, quantum), expected_sq);
  rows.holds("ordering, analytic quantum: x_sq < x_vac", "holds", quantum_order.x_reduced);
  rows.holds("ordering, analytic quantum: p_sq > p_vac", "holds", quantum_order.p_increased);

  const double r_epr = -0.5 * std::log(kEprSqueezing);
  rows.within("Duan sum of EPR beams", "0.47 +/- 0.04", 0.47, duan_sum(make_epr(r_epr, r_epr)), 0.001);
  rows.within("Duan sum of two vacua", "1 (separable bound)", 1.0, duan_sum(vacuum_state(2)), 0.0);

  const auto anti_sweep = classical_fidelity_sweep(SweepAxis::antisqueeze_db, 2.39, 0.0, 20.0, 2);
  rows.within("classical limit at e^{+2r} = 0 dB", "0.84", 0.841, anti_sweep.front().fidelity, 0.005);
  const auto tau_sweep = classical_fidelity_sweep(SweepAxis::tau_db, 5.06, 0.0, 40.0, 2);
  rows.within("classical limit at coth(beta/2) = 0 dB", "0.44 (recomputed 0.426)", 0.426,
              tau_sweep.front().fidelity, 0.005);
  rows.above("classical limit at coth(beta/2) = 40 dB", "-> 1", 0.99, tau_sweep.back().fidelity);

  // Strong-field gain calibration on the shot-level simulator.
  TeleportConfig calibrated;
  calibrated.g_x = kReportedGain;
  calibrated.g_p = kReportedGain;
  calibrated.r_minus = r_epr;
  calibrated.r_plus = r_epr;
  const std::complex<double> alpha(50.0, 50.0);
  const auto records = mc::run_shots(displace(vacuum_state(1), 0, alpha), calibrated, 100000, 2006);
  const mc::GainEstimate gain = mc::estimate_gain(records, alpha);
  rows.within("strong-field gain g_x", "0.98 +/- 0.04", kReportedGain, gain.g_x, 0.01);
  rows.within("strong-field gain g_p", "0.98 +/- 0.03", kReportedGain, gain.g_p, 0.01);

  return rows.take();
}

bool all_pass(const std::vector<AnchorRow>& rows) {
  return std::all_of(rows.begin(), rows.end(), [](const AnchorRow& r) { return r.pass; });
}

std::string format_anchor_table(const std::vector<AnchorRow>& rows) {
  std::size_t width = 4;
  for (const auto& r : rows) width = std::max(width, r.name.size());
  std::string out = fmt::format("{:<{}}  {:<24} {:>10} {:>10} {:>9}  {}\n", "name", width, "published", "target",
                                "computed", "tol", "verdict");
  for (const auto& r : rows) {
    std::string tol;
    switch (r.check) {
      case Check::within:
        tol = fmt::format("{:.3g}", r.tolerance);
        break;
      case Check::above:
        tol = "> target";
        break;
      case Check::holds:
        tol = "bool";
        break;
    }
    out += fmt::format("{:<{}}  {:<24} {:>10.4f} {:>10.4f} {:>9}  {}\n", r.name, width, r.published, r.target,
                       r.computed, tol, r.pass ? "PASS" : "FAIL");
  }
  const auto passed = std::count_if(rows.begin(), rows.end(), [](const AnchorRow& r) { return r.pass; });
  out += fmt::format("{}/{} anchors pass\n", passed, rows.size());
  return out;
}

std::string format_anchor_csv(const std::vector<AnchorRow>& rows) {
  std::string out = "name,published,target,computed,tolerance,pass\n";
  for (const auto& r : rows) {
    out += fmt::format("\"{}\",\"{}\",{:.9g},{:.9g},{:.9g},{}\n", r.name, r.published, r.target, r.computed,
                       r.tolerance, r.pass ? 1 : 0);
  }
  return out;
}

}  // namespace cvtele::experiments
