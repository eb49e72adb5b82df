#include <gtest/gtest.h>

#include <cmath>

#include "fixture.hpp"
#include "oracle.hpp"
#include "rrv/error.hpp"
#include "rrv/tail_area.hpp"

using namespace rrv;

namespace {

NullModel talpiot_model(const ValidityFilter& filter) {
  const auto a = fx::analysis(filter);
  return NullModel::build(shape_of(a.configuration).shape, a.lists, a.lexicon, a.bonuses, filter);
}

double observed_rr() { return cluster_rr(fx::tomb(), fx::lists(), fx::lexicon(), fx::bonuses()).cluster_rr; }

}  // namespace

TEST(Shape, OfObservedTomb) {
  const auto m = shape_of(fx::tomb());
  EXPECT_EQ(m.shape.male_slots, 4u);
  EXPECT_EQ(m.shape.female_slots, 2u);
  ASSERT_EQ(m.shape.edges.size(), 1u);
  EXPECT_EQ(m.shape.edges[0], (GenerationalEdge{1, 0}));
  EXPECT_EQ(m.male_inscriptions, (std::vector<std::size_t>{1, 2, 3, 4}));
  EXPECT_EQ(m.female_inscriptions, (std::vector<std::size_t>{0, 5}));
}

TEST(SlotDistribution, MaleAtoms) {
  const auto d = slot_distribution(fx::lists().male, fx::lexicon());
  const auto o = oracle::male_atoms(0.018);
  ASSERT_EQ(d.atoms.size(), o.size());
  double sum = 0;
  for (const auto& a : d.atoms) sum += a.probability;
  EXPECT_NEAR(sum, 1.0, 1e-12);
  EXPECT_NEAR(d.total_probability(), 1.0, 1e-12);
  // Yoseph carries its mass minus the listed Yoseh rendition.
  const auto yoseph = d.atom_index(fx::male("Yoseph"), fx::lists().male);
  EXPECT_NEAR(d.atoms[yoseph].probability, 0.0746789, 1e-6);
  EXPECT_NEAR(d.atoms[yoseph].rr, 221.0 / 2509.0, 1e-15);
  EXPECT_NEAR(d.atoms[d.atom_index(fx::male("Yoseph", "", "Yoseh"), fx::lists().male)].probability, 0.0134040, 1e-6);
  EXPECT_EQ(d.atom_index(fx::male("Matya"), fx::lists().male), *d.other_index());
  EXPECT_NEAR(d.atoms[*d.other_index()].probability, static_cast<double>(o.back().p), 1e-15);
}

TEST(SlotDistribution, FemaleAtomsAndExclusions) {
  auto l = fx::lists();
  const auto lex = fx::lexicon();
  auto d = slot_distribution(l.female, lex);
  EXPECT_NEAR(d.total_probability(), 1.0, 1e-12);
  auto mariam = d.atoms[d.atom_index(fx::female("Mariam"), l.female)];
  EXPECT_NEAR(mariam.probability, (74.0 / 317.0) * 30.0 / 44.0, 1e-15);
  // Excluding Mariamene moves its mass to Other, not back to Mariam.
  l.female.entries.erase(l.female.entries.begin());
  l.female.excluded.push_back(rendition_entry("Mariam", "Mariamene"));
  d = slot_distribution(l.female, lex);
  EXPECT_NEAR(d.total_probability(), 1.0, 1e-12);
  EXPECT_EQ(d.atom_index(fx::female("Mariam", "", "Mariamene"), l.female), *d.other_index());
  mariam = d.atoms[d.atom_index(fx::female("Mariam"), l.female)];
  EXPECT_NEAR(mariam.probability, (74.0 / 317.0) * 30.0 / 44.0, 1e-15);
}

TEST(SlotDistribution, OverfullListIsRejected) {
  CandidateList l{Gender::female, {generic_entry("Mariam"), generic_entry("Salome")}, {}, 1.0};
  const auto lex = Lexicon(fx::counts(), {{Gender::female, "Salome", 0.9, ""}});
  try {
    slot_distribution(l, lex);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NegativeMass);
  }
}

TEST(ExactTail, MatchesBruteForce) {
  const double t = observed_rr();
  EXPECT_NEAR(t / static_cast<double>(oracle::observed()), 1.0, 1e-14);
  for (bool distinct : {false, true}) {
    const auto filter = distinct ? ValidityFilter::distinct_candidates() : ValidityFilter::accept_all();
    const auto r = exact_tail(talpiot_model(filter), t);
    const auto o = oracle::tail(t * (1 + 1e-12), 0.018, 0.183, distinct);
    EXPECT_NEAR(r.alpha / static_cast<double>(o.alpha), 1.0, 1e-9) << distinct;
    EXPECT_NEAR(r.accepted_fraction, static_cast<double>(o.beta), 1e-12);
    EXPECT_EQ(r.combinations, 5u * 5 * 5 * 5 * 5 * 5);
  }
}

TEST(ExactTail, KnownValues) {
  const double t = observed_rr();
  // Lists without James and Salome, no filter.
  {
    auto a = fx::analysis(ValidityFilter::accept_all());
    a.lists = fx::lists(false, false);
    const auto o = oracle::tail(t * (1 + 1e-12), 0, 0, false);
    const auto r = exact_tail(null_model(a), t);
    EXPECT_NEAR(r.alpha / static_cast<double>(o.alpha), 1.0, 1e-9);
    EXPECT_NEAR(r.alpha, 2.2e-6, 0.1e-6);
  }
  const auto r = exact_tail(talpiot_model(ValidityFilter::distinct_candidates()), t);
  EXPECT_NEAR(r.alpha, 2.5026e-6, 1e-9);
  EXPECT_NEAR(r.accepted_fraction, 0.8968, 1e-4);
}

TEST(ExactTail, TrivialThresholds) {
  const auto m = talpiot_model(ValidityFilter::accept_all());
  EXPECT_EQ(exact_tail(m, 1.0).alpha, 1.0);
  EXPECT_EQ(exact_tail(m, 1e-30).alpha, 0.0);
}

TEST(ExactTail, BudgetAndDegenerate) {
  const auto m = talpiot_model(ValidityFilter::accept_all());
  try {
    exact_tail(m, 1e-8, {100.0, 1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BudgetExceeded);
  }
  const auto reject = ValidityFilter::custom("none", [](const SampledTomb&) { return false; });
  try {
    exact_tail(talpiot_model(reject), 1e-8);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegenerateInputs);
  }
}

TEST(ExactTail, WorkerCountDoesNotChangeBits) {
  const auto m = talpiot_model(ValidityFilter::distinct_candidates());
  const auto base = rr_distribution(m, {1e8, 1});
  for (std::size_t w : {2u, 4u, 8u}) {
    const auto d = rr_distribution(m, {1e8, w});
    EXPECT_EQ(d.support(), base.support());
    EXPECT_EQ(d.masses(), base.masses());
    EXPECT_EQ(d.accepted_mass(), base.accepted_mass());
  }
}

TEST(ExactTail, AcceptProbabilityScalesBetaOnly) {
  const double t = observed_rr();
  const auto f = ValidityFilter::distinct_candidates();
  const auto a = exact_tail(talpiot_model(f), t);
  const auto b = exact_tail(talpiot_model(f.with_accept_probability(0.5)), t);
  EXPECT_NEAR(b.alpha / a.alpha, 1.0, 1e-12);
  EXPECT_NEAR(b.accepted_fraction / a.accepted_fraction, 0.5, 1e-12);
}

TEST(Distribution, AlphaAtMost) {
  const auto d = rr_distribution(talpiot_model(ValidityFilter::accept_all()));
  const auto alphas = d.achievable_alphas();
  ASSERT_FALSE(alphas.empty());
  EXPECT_TRUE(std::is_sorted(alphas.begin(), alphas.end()));
  EXPECT_NEAR(alphas.back(), 1.0, 1e-12);
  for (std::size_t i = 0; i < alphas.size(); i += 37) {
    EXPECT_EQ(d.probability_alpha_at_most(alphas[i]), alphas[i]);
    EXPECT_LE(d.probability_alpha_at_most(alphas[i] * 0.999), alphas[i] * 0.999);
  }
  EXPECT_EQ(d.probability_alpha_at_most(0.0), 0.0);
}

TEST(MonteCarlo, AgreesWithExact) {
  const double t = observed_rr();
  // A threshold with a large tail makes the check sharp.
  for (double thr : {t, 1e-5, 1e-3}) {
    const auto m = talpiot_model(ValidityFilter::distinct_candidates());
    const auto e = exact_tail(m, thr);
    const auto r = mc_tail(m, thr, {200000, 11, 2});
    const double se = std::sqrt(e.alpha * (1 - e.alpha) / static_cast<double>(*r.accepted_samples));
    EXPECT_LE(std::fabs(r.alpha - e.alpha), 4 * se + 1e-300) << thr;
    EXPECT_NEAR(r.accepted_fraction, e.accepted_fraction, 0.01);
  }
}

TEST(MonteCarlo, SeededAndWorkerIndependent) {
  const auto m = talpiot_model(ValidityFilter::distinct_candidates());
  const auto a = mc_tail(m, 1e-4, {300000, 5, 1});
  const auto b = mc_tail(m, 1e-4, {300000, 5, 8});
  const auto c = mc_tail(m, 1e-4, {300000, 6, 1});
  EXPECT_EQ(a.hits, b.hits);
  EXPECT_EQ(a.accepted_samples, b.accepted_samples);
  EXPECT_EQ(a.alpha, b.alpha);
  EXPECT_NE(a.hits, c.hits);
}

TEST(SampleCount, ExactArithmetic) {
  const auto s = count_samples(2509, 317, shape_of(fx::tomb()).shape, 0.906);
  EXPECT_EQ(s.raw, "3982182593561618329");
  EXPECT_NEAR(s.valid / s.raw_approx, 0.906, 1e-12);
}
