#include <gtest/gtest.h>

#include <cmath>

#include "fixture.hpp"
#include "rrv/calibration.hpp"
#include "rrv/error.hpp"

using namespace rrv;

namespace {

const ConfigurationShape kShape{4, 2, {{1, 0}}};

WorldSpec h0(std::uint64_t n, std::uint64_t seed) {
  WorldSpec s;
  s.mode = WorldMode::h0_random;
  s.shape = kShape;
  s.n_tombs = n;
  s.seed = seed;
  return s;
}

WorldSpec full_plant(std::uint64_t n, bool sampling) {
  WorldSpec s = h0(n, 3);
  s.mode = WorldMode::h1_planted;
  s.plant = {{Gender::male, "Yeshua", {}},        {Gender::male, "Yoseph", {}},
             {Gender::male, "Yoseph", "Yoseh"},   {Gender::male, "Matya", {}},
             {Gender::female, "Mariam", "Mariamene"}, {Gender::female, "Mariam", "Marya"}};
  s.plant_edges = {{1, 0}};
  s.rendition_sampling = sampling;
  return s;
}

}  // namespace

TEST(Worlds, FullPlantReproducesObservedCluster) {
  const auto a = fx::analysis();
  const double observed = cluster_rr(a.configuration, a.lists, a.lexicon, a.bonuses).cluster_rr;
  const auto run = simulate_worlds(full_plant(500, false), a.lists, a.lexicon, a.bonuses, a.filter);
  ASSERT_EQ(run.size(), 500u);
  for (double v : run.rr) EXPECT_EQ(v, observed);
  const auto t = run.tomb(0, null_model(a));
  EXPECT_EQ(cluster_rr(t, a.lists, a.lexicon, a.bonuses).cluster_rr, observed);
}

TEST(Worlds, RenditionSamplingVariesThePlant) {
  const auto a = fx::analysis();
  const auto run = simulate_worlds(full_plant(2000, true), a.lists, a.lexicon, a.bonuses, a.filter);
  std::size_t differ = 0;
  for (double v : run.rr) differ += v != run.rr[0];
  EXPECT_GT(differ, 0u);
}

TEST(Worlds, PointMassLexicon) {
  const Onomasticon onom({{Gender::male, "Yeshua", std::nullopt, Source::all_sources, 10}},
                         {{{Gender::male, Source::all_sources}, 10}}, {});
  CandidateLists l;
  l.male.entries = {generic_entry("Yeshua")};
  auto s = h0(100, 9);
  s.shape = {3, 0, {}};
  const auto run = simulate_worlds(s, l, Lexicon(onom), BonusPolicy{});
  for (std::size_t i = 0; i < run.size(); ++i) {
    EXPECT_EQ(run.alpha[i], 1.0);
    EXPECT_EQ(run.rr[i], run.rr[0]);
  }
}

TEST(Worlds, InconsistentPlants) {
  auto s = full_plant(10, false);
  s.plant.push_back({Gender::female, "Salome", {}});
  EXPECT_THROW(s.validate(), Error);
  s = full_plant(10, false);
  s.plant_edges = {{0, 1}};
  try {
    s.validate();
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InconsistentPlant);
  }
  s = full_plant(10, false);
  s.plant_edges = {{4, 0}};
  EXPECT_THROW(s.validate(), Error);
}

TEST(Worlds, SeedAndWorkers) {
  const auto a = fx::analysis();
  const auto model = null_model(a);
  const auto null = rr_distribution(model);
  const auto one = simulate_worlds(h0(20000, 4), model, null, a.lists, a.lexicon, 1);
  const auto eight = simulate_worlds(h0(20000, 4), model, null, a.lists, a.lexicon, 8);
  const auto other = simulate_worlds(h0(20000, 5), model, null, a.lists, a.lexicon, 1);
  EXPECT_EQ(one.atoms, eight.atoms);
  EXPECT_EQ(one.alpha, eight.alpha);
  EXPECT_NE(one.atoms, other.atoms);
}

TEST(Worlds, FilterHoldsUnderH0) {
  const auto a = fx::analysis();
  const auto model = null_model(a);
  const auto run = simulate_worlds(h0(5000, 2), model, rr_distribution(model), a.lists, a.lexicon);
  for (std::size_t i = 0; i < run.size(); ++i) EXPECT_EQ(model.acceptance(run.male_atoms(i), run.female_atoms(i)), 1.0);
}

TEST(OperatingCharacteristics, EndpointsAndValidity) {
  const auto a = fx::analysis();
  const auto model = null_model(a);
  const auto null = rr_distribution(model);
  const auto w0 = simulate_worlds(h0(100000, 8), model, null, a.lists, a.lexicon, 2);
  const auto w1 = simulate_worlds(full_plant(2000, true), model, null, a.lists, a.lexicon, 2);
  const auto oc = operating_characteristics(w0, w1, {0.0, 1e-3, 1e-2, 0.1, 1.0});
  ASSERT_EQ(oc.points.size(), 5u);
  EXPECT_EQ(oc.points[0].false_positive_rate, 0.0);
  EXPECT_EQ(oc.points[4].false_positive_rate, 1.0);
  EXPECT_EQ(oc.points[4].detection_rate, 1.0);
  for (const auto& p : oc.points) {
    const double exact = null.probability_alpha_at_most(p.threshold);
    EXPECT_LE(exact, p.threshold);
    const double se = std::sqrt(exact * (1 - exact) / static_cast<double>(p.h0_tombs));
    EXPECT_LE(std::fabs(p.false_positive_rate - exact), 4 * se + 1e-12) << p.threshold;
    EXPECT_GE(p.detection_rate, p.false_positive_rate);
  }
}

TEST(OperatingCharacteristics, FullPlantDetectedAtItsOwnAlpha) {
  const auto a = fx::analysis();
  const auto model = null_model(a);
  const auto null = rr_distribution(model);
  const auto w1 = simulate_worlds(full_plant(200, false), model, null, a.lists, a.lexicon);
  const auto w0 = simulate_worlds(h0(200, 1), model, null, a.lists, a.lexicon);
  const auto oc = operating_characteristics(w0, w1, {w1.alpha[0]});
  EXPECT_EQ(oc.points[0].detection_rate, 1.0);
}

TEST(OperatingCharacteristics, ScenarioComparatorRuns) {
  const auto pc = fx::shipped();
  const auto& a = pc.analysis;
  const auto model = null_model(a);
  const auto null = rr_distribution(model);
  const auto w0 = simulate_worlds(h0(3000, 1), model, null, a.lists, a.lexicon);
  const auto w1 = simulate_worlds(full_plant(3000, true), model, null, a.lists, a.lexicon);
  const auto c0 = scenario_comparison(w0, model, pc.scenarios, a.lists, a.lexicon, 0.5, 1000, 2);
  const auto c1 = scenario_comparison(w1, model, pc.scenarios, a.lists, a.lexicon, 0.5, 1000, 2);
  EXPECT_EQ(c0.tombs, 1000u);
  EXPECT_LT(c0.flagged_rate, c1.flagged_rate);
  EXPECT_EQ(c1.flagged_rate, 1.0);
}
