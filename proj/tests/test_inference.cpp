#include <gtest/gtest.h>

#include <cmath>

#include "fixture.hpp"
#include "rrv/error.hpp"
#include "rrv/inference.hpp"
#include "rrv/tail_area.hpp"

using namespace rrv;

namespace {

const ConfigurationShape kShape{4, 2, {{1, 0}}};

ScenarioName name(Gender g, std::string generic, std::optional<std::string> r = {}) {
  return {g, std::move(generic), std::move(r)};
}

Scenario core(std::string label) {
  Scenario s{std::move(label), {}, {}};
  s.generations.push_back({name(Gender::male, "Yoseph"), name(Gender::male, "Yeshua")});
  return s;
}

std::vector<Scenario> scenarios() {
  auto a = core("Mariam and Yoseh");
  a.names = {name(Gender::female, "Mariam"), name(Gender::male, "Yoseph", "Yoseh")};
  auto b = core("Mariam and James");
  b.names = {name(Gender::female, "Mariam"), name(Gender::male, "James")};
  auto c = core("Mariam and Salome");
  c.names = {name(Gender::female, "Mariam"), name(Gender::female, "Salome")};
  return {a, b, c, core("pair only")};
}

}  // namespace

TEST(Trials, Estimates) {
  EXPECT_EQ(trials_estimate(4400, 2200, kShape), 1100u);
  EXPECT_EQ(trials_estimate(4, 2, kShape), 1u);
  EXPECT_EQ(trials_estimate(4000, 2200, kShape), 1000u);
  EXPECT_EQ(trials_estimate(4400, 0, ConfigurationShape{4, 0, {}}), 1100u);
  try {
    trials_estimate(4400, 2200, ConfigurationShape{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ZeroSlots);
  }
}

TEST(Multiplicity, Bounds) {
  const double a = 1.0 / 1821000.0;
  const double u = multiplicity_bound(a, 1100, MultiplicityMethod::union_bound);
  EXPECT_DOUBLE_EQ(u, 1100.0 / 1821000.0);
  EXPECT_NEAR(1.0 / u, 1655.45, 0.01);
  EXPECT_NEAR(multiplicity_bound(a, 1100, MultiplicityMethod::exact_complement), 6.0388e-4, 1e-8);
  EXPECT_EQ(multiplicity_bound(0.0, 12345, MultiplicityMethod::union_bound), 0.0);
  EXPECT_EQ(multiplicity_bound(0.0, 12345, MultiplicityMethod::exact_complement), 0.0);
  EXPECT_EQ(multiplicity_bound(0.01, 1000, MultiplicityMethod::union_bound), 1.0);
}

TEST(Posterior, Chain) {
  EXPECT_NEAR(posterior(1.0, 1.0 / 1655), 0.99940, 5e-6);
  EXPECT_NEAR(posterior(0.5, 1.0 / 1655), 0.99879, 5e-6);
  EXPECT_NEAR(posterior(0.1, 1.0 / 1655), 0.99400, 1e-5);
  EXPECT_EQ(posterior(0.0, 0.3), 0.0);
  EXPECT_THROW(posterior(0.0, 0.0), Error);
  const auto chain = posterior_chain(1.0 / 1821000.0, 1100, {1, 0.5, 0.1}, MultiplicityMethod::union_bound);
  ASSERT_EQ(chain.size(), 3u);
  EXPECT_NEAR(chain[0].posterior, 0.9994, 5e-5);
  EXPECT_NEAR(chain[1].posterior, 0.9988, 5e-5);
  EXPECT_NEAR(chain[2].posterior, 0.9940, 5e-5);
}

TEST(Scenario, ObservedTombFavoursH1) {
  const auto r = scenario_posterior(scenarios(), fx::tomb(), fx::lists(), fx::lexicon(), 0.5);
  EXPECT_GT(r.p_data_h1, r.p_data_h0);
  EXPECT_GT(r.posterior, 0.5);
  ASSERT_EQ(r.scenario_likelihoods.size(), 4u);
  EXPECT_GT(r.scenario_likelihoods[0], 0.0);
  EXPECT_NEAR(r.p_data_h0, configuration_probability(fx::tomb(), fx::lists(), fx::lexicon()), 0.0);
}

TEST(Scenario, MissingRequiredPairGivesZero) {
  auto t = fx::tomb();
  t.edges = {{7, 6}};  // Yeshua no longer son of Yoseph
  const auto r = scenario_posterior(scenarios(), t, fx::lists(), fx::lexicon(), 0.5);
  EXPECT_EQ(r.p_data_h1, 0.0);
  EXPECT_EQ(r.posterior, 0.0);
}

TEST(Scenario, ExactCopyOfObservation) {
  auto s = core("everything");
  s.names = {name(Gender::female, "Mariam", "Mariamene"), name(Gender::female, "Mariam", "Marya"),
             name(Gender::male, "Yoseph", "Yoseh")};
  const auto r = scenario_posterior({s}, fx::tomb(), fx::lists(), fx::lexicon(), 0.5);
  EXPECT_GT(r.p_data_h1, r.p_data_h0);
  EXPECT_GT(r.posterior, 0.5);
}

TEST(Scenario, TooManyRequiredNames) {
  auto s = core("crowded");
  for (int i = 0; i < 3; ++i) s.names.push_back(name(Gender::female, "Mariam"));
  try {
    scenario_posterior({s}, fx::tomb(), fx::lists(), fx::lexicon(), 0.5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InconsistentScenario);
  }
}

// Treating Mariamene like the other unremarkable names must lower the
// comparator's posterior.
TEST(Scenario, DemotingMariameneLowersPosterior) {
  std::vector<Scenario> with, without;
  for (auto s : scenarios()) {
    without.push_back(s);
    if (s.name != "Mariam and Salome") s.names.push_back(name(Gender::female, "Mariam", "Mariamene"));
    with.push_back(s);
  }
  auto l = fx::lists();
  const auto listed = scenario_posterior(with, fx::tomb(), l, fx::lexicon(), 0.5);
  l.female.entries.erase(l.female.entries.begin());
  l.female.excluded.push_back(rendition_entry("Mariam", "Mariamene"));
  const auto demoted = scenario_posterior(without, fx::tomb(), l, fx::lexicon(), 0.5);
  EXPECT_LT(demoted.posterior, listed.posterior);
}
