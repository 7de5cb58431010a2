#include <gtest/gtest.h>

#include "normlab/error.hpp"
#include "normlab/scenarios.hpp"

using namespace normlab;

class ScenarioPasses : public ::testing::TestWithParam<std::string> {};

TEST_P(ScenarioPasses, AllChecksPass) {
  const ScenarioReport r = run_scenario(GetParam(), ScenarioOptions{});
  EXPECT_EQ(r.name, GetParam());
  ASSERT_FALSE(r.checks.empty());
  for (const Check& c : r.checks) {
    EXPECT_TRUE(c.pass) << c.name << ": observed " << c.observed << c.observed_label << ", expected " << c.expected
                        << c.expected_label;
    EXPECT_NE(c.provenance, Provenance::None) << c.name;
  }
  EXPECT_TRUE(r.pass());
}

INSTANTIATE_TEST_SUITE_P(Registry, ScenarioPasses, ::testing::ValuesIn(scenario_names()),
                         [](const auto& info) {
                           std::string s = info.param;
                           for (char& ch : s)
                             if (ch == '-') ch = '_';
                           return s;
                         });

TEST(Scenario, UnknownNameListsRegistry) {
  try {
    run_scenario("no-such", ScenarioOptions{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("sharpness-TK"), std::string::npos);
  }
}

TEST(Check, MissingProvenanceFails) {
  EXPECT_FALSE(Check::near("x", 1.0, 1.0, 0.0, Provenance::None).pass);
  EXPECT_TRUE(Check::near("x", 1.0, 1.0, 0.0, Provenance::Exact).pass);
  EXPECT_FALSE(Check::at_most("x", NAN, 1.0, 0.0, Provenance::Exact).pass);
  EXPECT_FALSE(Check::label("x", "a", "b", Provenance::Exact).pass);
}

TEST(Scenario, PmFamilySingleDegree) {
  ScenarioOptions o;
  o.pm_degrees = {4};
  const ScenarioReport r = run_scenario("pm-family", o);
  EXPECT_TRUE(r.pass());
  EXPECT_TRUE(r.estimates.contains("m4"));
  EXPECT_FALSE(r.estimates.contains("m3"));
}
