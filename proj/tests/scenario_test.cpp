#include "cvtele/experiments/scenario.hpp"

#include <cmath>
#include <string>

#include <gtest/gtest.h>

#include "cvtele/errors.hpp"

namespace cvtele::experiments {
namespace {

const std::string kSqueezed = R"(# comment line
name = demo
input.kind = squeezed_thermal   # trailing comment
input.sigma_x_db = -2.66
input.sigma_p_db = 7.45
input.visibility = 0.968

resource.vacuum_out_x_db = 2.90
resource.vacuum_out_p_db = 3.01
gains.g_x = 1
gains.g_p = 1
run.mode = montecarlo
run.shots = 5000
run.seed = 42
)";

void expect_parse_error(const std::string& text, std::size_t line, std::size_t column) {
  try {
    parse_scenario(text, "t.scn");
    FAIL() << "no error for:\n" << text;
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), line) << e.what();
    EXPECT_EQ(e.column(), column) << e.what();
    EXPECT_EQ(std::string(e.what()).rfind("t.scn:" + std::to_string(line) + ":" + std::to_string(column) + ": ", 0),
              0u)
        << e.what();
  }
}

TEST(ParseScenario, FullExample) {
  const Scenario s = parse_scenario(kSqueezed);
  EXPECT_EQ(s.name, "demo");
  EXPECT_EQ(s.input.kind, InputKind::squeezed_thermal);
  EXPECT_EQ(*s.input.sigma_x_db, -2.66);
  EXPECT_EQ(*s.input.sigma_p_db, 7.45);
  EXPECT_EQ(s.input.visibility, 0.968);
  EXPECT_EQ(*s.resource.vacuum_out_x_db, 2.90);
  EXPECT_EQ(s.g_x, 1.0);
  EXPECT_EQ(s.g_p, 1.0);
  EXPECT_EQ(s.run.mode, RunMode::montecarlo);
  EXPECT_EQ(s.run.shots, 5000u);
  EXPECT_EQ(s.run.seed, 42u);
  EXPECT_FALSE(s.measured);
}

TEST(ParseScenario, DefaultsForEmptyText) {
  const Scenario s = parse_scenario("");
  EXPECT_EQ(s.input.kind, InputKind::vacuum);
  EXPECT_TRUE(s.resource.epr_enabled);
  EXPECT_EQ(s.run.mode, RunMode::analytic);
  EXPECT_EQ(s.run.shots, 100000u);
  EXPECT_EQ(s.g_x, 1.0);
}

TEST(ParseScenario, WhitespaceAndCrlfTolerated) {
  const Scenario s = parse_scenario("  \tresource.r_minus=0.5 \r\nresource.epr_enabled =false\r\n");
  EXPECT_EQ(s.resource.r_minus, 0.5);
  EXPECT_FALSE(s.resource.epr_enabled);
}

TEST(ParseScenario, UnknownKeyLocated) { expect_parse_error("name = a\n   bogus.key = 1\n", 2, 4); }

TEST(ParseScenario, DuplicateKeyLocated) { expect_parse_error("gains.g_x = 1\ngains.g_x = 2\n", 2, 1); }

TEST(ParseScenario, MissingEqualsLocated) { expect_parse_error("\n\n  gains.g_x 1\n", 3, 3); }

TEST(ParseScenario, BadNumberLocatedAtValue) { expect_parse_error("gains.g_x =  1.0x\n", 1, 14); }

TEST(ParseScenario, MissingValue) { expect_parse_error("gains.g_x =\n", 1, 12); }

TEST(ParseScenario, BadEnumValues) {
  expect_parse_error("run.mode = fast\n", 1, 12);
  expect_parse_error("input.kind = coherent\n", 1, 14);
  expect_parse_error("resource.epr_enabled = yes\n", 1, 24);
}

TEST(ParseScenario, ShotsValidated) {
  expect_parse_error("run.shots = -5\n", 1, 13);
  expect_parse_error("run.shots = 1\n", 1, 13);
}

TEST(ParseScenario, CrossKeyChecks) {
  EXPECT_THROW(parse_scenario("input.kind = squeezed_thermal\n"), ParseError);
  EXPECT_THROW(parse_scenario("input.kind = squeezed_thermal\ninput.sigma_x_db = 1\n"), ParseError);
  EXPECT_THROW(parse_scenario("input.kind = squeezed_thermal\ninput.sigma_x_db = 1\ninput.sigma_p_db = 1\n"
                              "input.r = 0.2\ninput.tau_db = 1\n"),
               ParseError);
  EXPECT_THROW(parse_scenario("input.sigma_x_db = 1\n"), ParseError);
  EXPECT_THROW(parse_scenario("measured.sigma_x_db = 1\n"), ParseError);
  EXPECT_THROW(parse_scenario("resource.vacuum_out_x_db = 3\n"), ParseError);
  EXPECT_THROW(parse_scenario("resource.vacuum_out_x_db = 3\nresource.vacuum_out_p_db = 3\n"
                              "resource.x_leg_squeeze = 0.5\n"),
               ParseError);
}

TEST(LoadScenario, MissingFileReportedAtLineZero) {
  try {
    load_scenario("/nonexistent/dir/x.scn");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 0u);
    EXPECT_NE(std::string(e.what()).find("/nonexistent/dir/x.scn"), std::string::npos);
  }
}

TEST(Resolve, CorrectsInputAndInfersLegs) {
  const ResolvedScenario r = resolve(parse_scenario(kSqueezed));
  EXPECT_NEAR(to_db(r.input_variances.sigma_x), -2.914, 2e-3);
  EXPECT_NEAR(to_db(r.input_variances.sigma_p), 7.683, 2e-3);
  ASSERT_TRUE(r.config.x_leg_squeeze && r.config.p_leg_squeeze);
  EXPECT_NEAR(*r.config.x_leg_squeeze, 0.4749, 5e-4);
  EXPECT_NEAR(*r.config.p_leg_squeeze, 0.5000, 5e-4);
  // Undeclared antisqueezing defaults to the pure value of the strongest leg.
  EXPECT_NEAR(std::exp(-2 * r.config.r_plus), *r.config.x_leg_squeeze, 1e-12);
}

TEST(Resolve, ParametrisedInput) {
  const ResolvedScenario r = resolve(parse_scenario("input.kind = squeezed_thermal\ninput.r = 0.5\ninput.tau_db = 3\n"));
  const double tau = std::pow(10.0, 0.3);
  EXPECT_NEAR(r.input_variances.sigma_x, tau * std::exp(-1.0) / 4, 1e-15);
  EXPECT_NEAR(r.input_variances.sigma_p, tau * std::exp(1.0) / 4, 1e-14);
}

TEST(Resolve, CoherentDisplacement) {
  const ResolvedScenario r = resolve(parse_scenario("input.alpha_re = 2\ninput.alpha_im = -1\n"));
  EXPECT_EQ(r.input.mean()(0), 2.0);
  EXPECT_EQ(r.input.mean()(1), -1.0);
}

TEST(Resolve, UnphysicalInputs) {
  EXPECT_THROW(resolve(parse_scenario("input.kind = squeezed_thermal\ninput.sigma_x_db = -8\ninput.sigma_p_db = 3\n")),
               UnphysicalError);
  EXPECT_THROW(resolve(parse_scenario("input.kind = squeezed_thermal\ninput.r = 0.5\ninput.tau_db = -1\n")),
               UnphysicalError);
  EXPECT_THROW(resolve(parse_scenario("resource.r_minus = 1\nresource.r_plus = 0.5\n")), UnphysicalError);
  EXPECT_THROW(resolve(parse_scenario("resource.r_minus = -0.2\n")), UnphysicalError);
  EXPECT_THROW(resolve(parse_scenario("channel.input_visibility = 1.2\n")), UnphysicalError);
}

TEST(Resolve, VisibilityCorrectionBelowZeroIsInconsistent) {
  EXPECT_THROW(resolve(parse_scenario("input.kind = squeezed_thermal\ninput.sigma_x_db = -20\n"
                                      "input.sigma_p_db = 30\ninput.visibility = 0.5\n")),
               InconsistentMeasurement);
}

}  // namespace
}  // namespace cvtele::experiments
