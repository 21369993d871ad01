// cvtele: command-line front end for the CV teleportation toolkit.
//
//   cvtele run <scenario> [--seed N] [--csv FILE]
//   cvtele reproduce-paper [--csv FILE]
//   cvtele sweep-fig4 --axis {tau|antisqueeze} --fixed-db F --range LO:HI --steps N --out FILE [--plot FILE]
//   cvtele fidelity --in-x-db X --in-p-db P --out-x-db X --out-p-db P
//
// Exit codes: 0 ok, 1 reproduce-paper anchor failure, 2 parse error,
// 3 unphysical parameters, 4 I/O error.

#include <charconv>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "cvtele/errors.hpp"
#include "cvtele/experiments/report.hpp"
#include "cvtele/experiments/reproduce.hpp"
#include "cvtele/experiments/scenario.hpp"
#include "cvtele/experiments/sweep_output.hpp"
#include "cvtele/fidelity.hpp"

namespace {

namespace ex = cvtele::experiments;

constexpr int kExitOk = 0;
constexpr int kExitAnchorFailed = 1;
constexpr int kExitParse = 2;
constexpr int kExitUnphysical = 3;
constexpr int kExitIo = 4;

struct RunArgs {
  std::string scenario;
  std::optional<std::uint64_t> seed;
  std::string csv;
};

struct SweepArgs {
  std::string axis;
  double fixed_db = 0.0;
  std::string range;
  std::size_t steps = 101;
  std::string out;
  std::string plot;
};

struct FidelityArgs {
  double in_x_db = 0.0;
  double in_p_db = 0.0;
  double out_x_db = 0.0;
  double out_p_db = 0.0;
};

int cmd_run(const RunArgs& args) {
  const ex::Scenario scenario = ex::load_scenario(args.scenario);
  const ex::ScenarioReport report = ex::run_scenario(scenario, {args.seed});
  if (!args.csv.empty()) ex::write_file(args.csv, ex::format_csv(report));
  std::cout << ex::format_table(report);
  return kExitOk;
}

int cmd_reproduce(const std::string& csv) {
  const auto rows = ex::reproduce_paper();
  if (!csv.empty()) ex::write_file(csv, ex::format_anchor_csv(rows));
  std::cout << ex::format_anchor_table(rows);
  return ex::all_pass(rows) ? kExitOk : kExitAnchorFailed;
}

std::pair<double, double> parse_range(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw CLI::ValidationError("--range", "expected LO:HI");
  const auto number = [&](std::string_view s) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
      throw CLI::ValidationError("--range", "not a number: '" + std::string(s) + "'");
    }
    return v;
  };
  const std::string_view view(text);
  return {number(view.substr(0, colon)), number(view.substr(colon + 1))};
}

int cmd_sweep(const SweepArgs& args) {
  const auto [lo, hi] = parse_range(args.range);
  const cvtele::SweepAxis axis = args.axis == "tau" ? cvtele::SweepAxis::tau_db : cvtele::SweepAxis::antisqueeze_db;
  std::vector<cvtele::SweepPoint> points;
  try {
    points = cvtele::classical_fidelity_sweep(axis, args.fixed_db, lo, hi, args.steps);
  } catch (const cvtele::InvalidArgument& e) {
    throw CLI::ValidationError("sweep-fig4", e.what());
  }
  ex::write_file(args.out, ex::sweep_csv(points));
  if (!args.plot.empty()) ex::write_file(args.plot, ex::sweep_svg(points, axis, args.fixed_db));
  std::cout << fmt::format("wrote {} points to {}\n", points.size(), args.out);
  return kExitOk;
}

int cmd_fidelity(const FidelityArgs& args) {
  const cvtele::QuadPair in = cvtele::QuadPair::from_db(args.in_x_db, args.in_p_db);
  const cvtele::QuadPair out = cvtele::QuadPair::from_db(args.out_x_db, args.out_p_db);
  const auto sq = cvtele::fidelity_squeezed_thermal(in, out);
  const auto oracle = cvtele::fidelity_gaussian_oracle(cvtele::diagonal_state(in), cvtele::diagonal_state(out));
  std::cout << fmt::format("input   sigma_x {:.9g} ({:.3f} dB)  sigma_p {:.9g} ({:.3f} dB)\n", in.sigma_x,
                           args.in_x_db, in.sigma_p, args.in_p_db);
  std::cout << fmt::format("output  sigma_x {:.9g} ({:.3f} dB)  sigma_p {:.9g} ({:.3f} dB)\n", out.sigma_x,
                           args.out_x_db, out.sigma_p, args.out_p_db);
  std::cout << fmt::format("input   r {:.6f}  tau {:.6f}\n", sq.input_params->r, sq.input_params->tau);
  std::cout << fmt::format("output  r {:.6f}  tau {:.6f}\n", sq.output_params->r, sq.output_params->tau);
  std::cout << fmt::format("fidelity {:<17} {:.6f}\n", cvtele::method_name(sq.method), sq.value);
  std::cout << fmt::format("fidelity {:<17} {:.6f}\n", cvtele::method_name(oracle.method), oracle.value);
  if (args.in_x_db == 0.0 && args.in_p_db == 0.0) {
    const auto vac = cvtele::fidelity_vacuum(out);
    std::cout << fmt::format("fidelity {:<17} {:.6f}\n", cvtele::method_name(vac.method), vac.value);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Continuous-variable teleportation of Gaussian states: simulate, compare, reproduce."};
  app.require_subcommand(1);

  RunArgs run_args;
  auto* run = app.add_subcommand("run", "Run a scenario file and print its report");
  run->add_option("scenario", run_args.scenario, "Scenario file")->required();
  run->add_option("--seed", run_args.seed, "Override the scenario's Monte-Carlo seed");
  run->add_option("--csv", run_args.csv, "Also write the report as CSV");

  std::string reproduce_csv;
  auto* reproduce = app.add_subcommand("reproduce-paper", "Recompute every published anchor as a pass/fail table");
  reproduce->add_option("--csv", reproduce_csv, "Also write the table as CSV");

  SweepArgs sweep_args;
  auto* sweep = app.add_subcommand("sweep-fig4", "Classical-limit fidelity sweep over coth(beta/2) or e^{+2r}");
  sweep->add_option("--axis", sweep_args.axis, "Swept quantity")
      ->required()
      ->check(CLI::IsMember({"tau", "antisqueeze"}));
  sweep->add_option("--fixed-db", sweep_args.fixed_db, "Value of the other quantity in dB")->required();
  sweep->add_option("--range", sweep_args.range, "Swept interval LO:HI in dB")->required();
  sweep->add_option("--steps", sweep_args.steps, "Number of points (>= 2)")->required();
  sweep->add_option("--out", sweep_args.out, "CSV output path")->required();
  sweep->add_option("--plot", sweep_args.plot, "Optional SVG plot path");

  FidelityArgs fid_args;
  auto* fid = app.add_subcommand("fidelity", "Fidelity between two co-aligned squeezed thermal states");
  fid->add_option("--in-x-db", fid_args.in_x_db)->required();
  fid->add_option("--in-p-db", fid_args.in_p_db)->required();
  fid->add_option("--out-x-db", fid_args.out_x_db)->required();
  fid->add_option("--out-p-db", fid_args.out_p_db)->required();

  try {
    app.parse(argc, argv);
    if (*run) return cmd_run(run_args);
    if (*reproduce) return cmd_reproduce(reproduce_csv);
    if (*sweep) return cmd_sweep(sweep_args);
    if (*fid) return cmd_fidelity(fid_args);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitParse;
  } catch (const ex::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitParse;
  } catch (const cvtele::UnphysicalError& e) {
    std::cerr << "unphysical: " << e.what() << '\n';
    return kExitUnphysical;
  } catch (const cvtele::InconsistentMeasurement& e) {
    std::cerr << "unphysical: " << e.what() << '\n';
    return kExitUnphysical;
  } catch (const cvtele::InvalidArgument& e) {
    std::cerr << "unphysical: " << e.what() << '\n';
    return kExitUnphysical;
  } catch (const ex::IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kExitIo;
  }
  return kExitOk;
}
