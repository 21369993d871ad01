#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "cvtele/errors.hpp"
#include "cvtele/experiments/report.hpp"
#include "cvtele/experiments/reproduce.hpp"
#include "cvtele/experiments/scenario.hpp"
#include "cvtele/experiments/sweep_output.hpp"

namespace cvtele::experiments {
namespace {

namespace fs = std::filesystem;

const fs::path kScenarios = CVTELE_SCENARIO_DIR;

ScenarioReport run_bundled(const std::string& file) { return run_scenario(load_scenario(kScenarios / file)); }

double fidelity_of(const ScenarioReport& r, const std::string& reference, FidelityMethod method) {
  for (const auto& f : r.fidelities) {
    if (f.reference == reference && f.report.method == method) return f.report.value;
  }
  ADD_FAILURE() << "no " << reference << " fidelity";
  return NAN;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class TempDir {
 public:
  TempDir() : path_(fs::temp_directory_path() / ("cvtele_test_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                                 "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name())) {
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

int run_cli(const std::string& args, const fs::path& log) {
  const std::string cmd = std::string("\"") + CVTELE_CLI_PATH + "\" " + args + " > \"" + log.string() + "\" 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST(RunScenario, QuantumSqueezedInput) {
  const ScenarioReport r = run_bundled("paper_quantum_squeezed.scn");
  EXPECT_NEAR(to_db(r.input.sigma_x), -2.914, 2e-3);
  EXPECT_NEAR(to_db(r.input.sigma_p), 7.683, 2e-3);
  EXPECT_NEAR(to_db(r.output.sigma_x), 1.65, 0.01);
  EXPECT_NEAR(to_db(r.output.sigma_p), 8.37, 0.01);
  EXPECT_NEAR(to_db(r.vacuum_output.sigma_x), 2.90, 1e-9);
  EXPECT_NEAR(to_db(r.vacuum_output.sigma_p), 3.01, 1e-9);
  EXPECT_TRUE(r.ordering.x_reduced);
  EXPECT_TRUE(r.ordering.p_increased);
  EXPECT_LT(r.duan, 1.0);
  EXPECT_NEAR(fidelity_of(r, "measured", FidelityMethod::squeezed_thermal), 0.845, 5e-4);
  EXPECT_NEAR(fidelity_of(r, "measured", FidelityMethod::general_gaussian),
              fidelity_of(r, "measured", FidelityMethod::squeezed_thermal), 1e-10);
  EXPECT_NEAR(fidelity_of(r, "model", FidelityMethod::squeezed_thermal), 0.862, 5e-4);
}

TEST(RunScenario, ClassicalVacuumInput) {
  const ScenarioReport r = run_bundled("paper_classical_vacuum.scn");
  EXPECT_NEAR(to_db(r.output.sigma_x), 4.77, 5e-3);
  EXPECT_NEAR(to_db(r.output.sigma_p), 4.77, 5e-3);
  EXPECT_DOUBLE_EQ(fidelity_of(r, "model", FidelityMethod::vacuum_overlap), 0.5);
  EXPECT_EQ(r.duan, 1.0);
}

TEST(RunScenario, ClassicalSqueezedInput) {
  const ScenarioReport r = run_bundled("paper_classical_squeezed.scn");
  EXPECT_NEAR(to_db(r.output.sigma_x), 4.00, 0.01);
  EXPECT_NEAR(to_db(r.output.sigma_p), 8.96, 0.01);
}

TEST(RunScenario, QuantumVacuumNetwork) {
  const ScenarioReport r = run_bundled("paper_quantum_vacuum.scn");
  EXPECT_EQ(r.mode, RunMode::network);
  EXPECT_LT(fidelity_of(r, "model", FidelityMethod::vacuum_overlap), 1.0);
  EXPECT_GT(fidelity_of(r, "model", FidelityMethod::vacuum_overlap), 0.5);
}

TEST(RunScenario, MonteCarloGainCalibration) {
  const ScenarioReport r = run_bundled("gain_calibration_mc.scn");
  ASSERT_TRUE(r.gains);
  ASSERT_TRUE(r.output_standard_error);
  EXPECT_NEAR(r.gains->g_x, 0.98, 0.01);
  EXPECT_NEAR(r.gains->g_p, 0.98, 0.01);
}

TEST(RunScenario, SeedOverrideChangesMonteCarloOnly) {
  const Scenario s = load_scenario(kScenarios / "gain_calibration_mc.scn");
  const ScenarioReport a = run_scenario(s, {.seed = 5});
  const ScenarioReport b = run_scenario(s, {.seed = 5});
  const ScenarioReport c = run_scenario(s, {.seed = 6});
  EXPECT_EQ(a.output.sigma_x, b.output.sigma_x);
  EXPECT_NE(a.output.sigma_x, c.output.sigma_x);
}

TEST(FormatCsv, HeaderAndPairedDbColumn) {
  const std::string csv = format_csv(run_bundled("paper_quantum_squeezed.scn"));
  std::istringstream lines(csv);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "quantity,value,db");
  EXPECT_EQ(csv.find('\r'), std::string::npos);
  bool saw_output = false;
  while (std::getline(lines, line)) {
    EXPECT_EQ(std::count(line.begin(), line.end(), ','), 2) << line;
    const auto c1 = line.find(',');
    const auto c2 = line.find(',', c1 + 1);
    const std::string db = line.substr(c2 + 1);
    if (!db.empty()) {
      const double value = std::stod(line.substr(c1 + 1, c2 - c1 - 1));
      EXPECT_NEAR(std::stod(db), to_db(value), 1e-6) << line;
    }
    saw_output |= line.rfind("output_sigma_x,", 0) == 0;
  }
  EXPECT_TRUE(saw_output);
}

TEST(FormatCsv, BitStableAcrossRuns) {
  const Scenario s = load_scenario(kScenarios / "gain_calibration_mc.scn");
  EXPECT_EQ(format_csv(run_scenario(s)), format_csv(run_scenario(s)));
}

TEST(FormatTable, MentionsScenario) {
  const std::string t = format_table(run_bundled("paper_quantum_squeezed.scn"));
  EXPECT_NE(t.find("paper_quantum_squeezed"), std::string::npos);
}

TEST(ReproduceAnchors, AllPass) {
  const auto rows = reproduce_paper();
  EXPECT_GE(rows.size(), 20u);
  for (const auto& row : rows) EXPECT_TRUE(row.pass) << row.name << ": " << row.computed;
  EXPECT_TRUE(all_pass(rows));
  const std::string csv = format_anchor_csv(rows);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), static_cast<long>(rows.size() + 1));
}

TEST(SweepOutput, CsvFormat) {
  const std::vector<SweepPoint> pts{{0.0, 0.5}, {1.5, 0.123456789012}};
  EXPECT_EQ(sweep_csv(pts), "abscissa_db,fidelity\n0,0.5\n1.5,0.123456789\n");
}

TEST(SweepOutput, SvgIsSelfContained) {
  const auto pts = classical_fidelity_sweep(SweepAxis::tau_db, 5.06, 0.0, 10.0, 11);
  const std::string svg = sweep_svg(pts, SweepAxis::tau_db, 5.06);
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
  // Axes plus the curve.
  EXPECT_GE(std::count_if(svg.begin(), svg.end(), [&, i = std::size_t{0}](char) mutable {
              return svg.compare(i++, 5, "<path") == 0;
            }),
            2);
  EXPECT_EQ(svg.find("http://"), svg.find("http://www.w3.org"));
}

TEST(SweepOutput, WriteFailureIsIoError) {
  EXPECT_THROW(write_file("/nonexistent/dir/out.csv", "x"), IoError);
}

TEST(Cli, RunSucceedsAndWritesCsv) {
  TempDir tmp;
  const fs::path csv = tmp.path() / "r.csv";
  EXPECT_EQ(run_cli("run \"" + (kScenarios / "paper_quantum_squeezed.scn").string() + "\" --csv \"" + csv.string() + "\"",
                    tmp.path() / "log"),
            0);
  EXPECT_EQ(slurp(csv), format_csv(run_bundled("paper_quantum_squeezed.scn")));
}

TEST(Cli, ReproduceExitsZero) {
  TempDir tmp;
  EXPECT_EQ(run_cli("reproduce-paper", tmp.path() / "log"), 0);
  EXPECT_NE(slurp(tmp.path() / "log").find("anchors pass"), std::string::npos);
}

TEST(Cli, SweepWritesCsvAndPlot) {
  TempDir tmp;
  const fs::path out = tmp.path() / "s.csv";
  const fs::path plot = tmp.path() / "s.svg";
  EXPECT_EQ(run_cli("sweep-fig4 --axis antisqueeze --fixed-db 2.39 --range 0:20 --steps 5 --out \"" + out.string() +
                        "\" --plot \"" + plot.string() + "\"",
                    tmp.path() / "log"),
            0);
  EXPECT_EQ(slurp(out), sweep_csv(classical_fidelity_sweep(SweepAxis::antisqueeze_db, 2.39, 0, 20, 5)));
  EXPECT_TRUE(fs::exists(plot));
}

TEST(Cli, UsageErrorsExitTwoWithoutOutput) {
  TempDir tmp;
  const fs::path out = tmp.path() / "s.csv";
  EXPECT_EQ(run_cli("sweep-fig4 --axis sideways --fixed-db 2 --range 0:5 --steps 5 --out \"" + out.string() + "\"",
                    tmp.path() / "log"),
            2);
  EXPECT_EQ(run_cli("sweep-fig4 --axis tau --fixed-db 2 --range 0-5 --steps 5 --out \"" + out.string() + "\"",
                    tmp.path() / "log"),
            2);
  // An inverted range is a usage error, not a physics one.
  EXPECT_EQ(run_cli("sweep-fig4 --axis tau --fixed-db 2 --range 5:1 --steps 5 --out \"" + out.string() + "\"",
                    tmp.path() / "log"),
            2);
  EXPECT_FALSE(fs::exists(out));
  EXPECT_EQ(run_cli("frobnicate", tmp.path() / "log"), 2);
}

TEST(Cli, ScenarioParseErrorExitsTwoWithLocation) {
  TempDir tmp;
  const fs::path scn = tmp.path() / "bad.scn";
  std::ofstream(scn) << "name = x\nrun.mode = sometimes\n";
  EXPECT_EQ(run_cli("run \"" + scn.string() + "\"", tmp.path() / "log"), 2);
  EXPECT_NE(slurp(tmp.path() / "log").find("bad.scn:2:12:"), std::string::npos) << slurp(tmp.path() / "log");
  EXPECT_EQ(run_cli("run \"" + (tmp.path() / "missing.scn").string() + "\"", tmp.path() / "log"), 2);
}

TEST(Cli, UnphysicalInputExitsThree) {
  TempDir tmp;
  const fs::path scn = tmp.path() / "unphysical.scn";
  std::ofstream(scn) << "input.kind = squeezed_thermal\ninput.sigma_x_db = -9\ninput.sigma_p_db = 2\n";
  const fs::path out = tmp.path() / "r.csv";
  EXPECT_EQ(run_cli("run \"" + scn.string() + "\" --csv \"" + out.string() + "\"", tmp.path() / "log"), 3);
  EXPECT_FALSE(fs::exists(out));
  EXPECT_EQ(run_cli("fidelity --in-x-db -9 --in-p-db 2 --out-x-db 3 --out-p-db 3", tmp.path() / "log"), 3);
}

TEST(Cli, UnwritableOutputExitsFour) {
  TempDir tmp;
  EXPECT_EQ(run_cli("sweep-fig4 --axis tau --fixed-db 5.06 --range 0:3 --steps 3 --out /nonexistent/dir/s.csv",
                    tmp.path() / "log"),
            4);
}

}  // namespace
}  // namespace cvtele::experiments
