#include "rrv/calibration.hpp"

#include <algorithm>
#include <cmath>

#include "rrv/error.hpp"
#include "rrv/numeric.hpp"
#include "rrv/parallel.hpp"
#include "rrv/text.hpp"

namespace rrv {

std::string_view to_string(WorldMode m) noexcept {
  return m == WorldMode::h0_random ? "h0_random" : "h1_planted";
}

void WorldSpec::validate() const {
  shape.validate();
  if (n_tombs < 1) throw Error(ErrorCode::InvalidArgument, "a world needs at least one tomb");
  if (mode == WorldMode::h0_random) return;

  std::vector<std::size_t> male_slot(plant.size());
  std::size_t males = 0, females = 0;
  for (std::size_t i = 0; i < plant.size(); ++i) {
    if (plant[i].generic.empty()) throw Error(ErrorCode::InconsistentPlant, "planted name is empty");
    if (plant[i].gender == Gender::male) {
      male_slot[i] = males++;
    } else {
      ++females;
    }
  }
  if (males > shape.male_slots || females > shape.female_slots) {
    throw Error(ErrorCode::InconsistentPlant, "more planted names than slots");
  }
  for (const auto& e : plant_edges) {
    if (e.father >= plant.size() || e.son >= plant.size() ||
        plant[e.father].gender != Gender::male || plant[e.son].gender != Gender::male) {
      throw Error(ErrorCode::InconsistentPlant, "planted edge must join two planted men");
    }
    const GenerationalEdge slots{male_slot[e.father], male_slot[e.son]};
    if (std::find(shape.edges.begin(), shape.edges.end(), slots) == shape.edges.end()) {
      throw Error(ErrorCode::InconsistentPlant, "planted edge is not an edge of the shape");
    }
  }
}

std::span<const AtomIndex> WorldRun::male_atoms(std::size_t tomb) const {
  return {atoms.data() + tomb * slots_per_tomb, spec.shape.male_slots};
}

std::span<const AtomIndex> WorldRun::female_atoms(std::size_t tomb) const {
  return {atoms.data() + tomb * slots_per_tomb + spec.shape.male_slots, spec.shape.female_slots};
}

TombConfiguration WorldRun::tomb(std::size_t index, const NullModel& model) const {
  TombConfiguration config;
  auto add = [&](Gender g, AtomIndex a) {
    const auto& atom = model.distribution(g).atoms[a];
    Inscription insc;
    insc.gender = g;
    if (atom.entry) {
      insc.generic = atom.entry->generic;
      insc.rendition = atom.entry->rendition;
    } else {
      insc.generic = "(other)";
    }
    config.inscriptions.push_back(std::move(insc));
  };
  for (auto a : male_atoms(index)) add(Gender::male, a);
  for (auto a : female_atoms(index)) add(Gender::female, a);
  config.edges = spec.shape.edges;
  return config;
}

namespace {

// Possible atoms of one planted slot with cumulative probabilities.
struct PlantChoice {
  std::vector<double> cumulative;
  std::vector<AtomIndex> atoms;
};

PlantChoice plant_choice(const PlantedName& name, bool rendition_sampling,
                         const SlotDistribution& dist, const CandidateList& list,
                         const Lexicon& lexicon) {
  PlantChoice choice;
  auto add = [&](std::optional<std::string> rendition, double p) {
    Inscription insc{name.gender, name.generic, std::move(rendition), false, {}};
    const double prev = choice.cumulative.empty() ? 0.0 : choice.cumulative.back();
    choice.cumulative.push_back(prev + p);
    choice.atoms.push_back(static_cast<AtomIndex>(dist.atom_index(insc, list)));
  };
  const auto renditions = lexicon.rendition_frequencies(name.gender, name.generic);
  if (!rendition_sampling || renditions.empty()) {
    add(name.rendition, 1.0);
    return choice;
  }
  double recorded = 0.0;
  for (const auto& [r, p] : renditions) {
    add(r, p);
    recorded += p;
  }
  if (recorded < 1.0) add(std::nullopt, 1.0 - recorded);
  return choice;
}

AtomIndex pick(const PlantChoice& c, double u) {
  const double target = u * c.cumulative.back();
  auto it = std::upper_bound(c.cumulative.begin(), c.cumulative.end(), target);
  if (it == c.cumulative.end()) --it;
  return c.atoms[static_cast<std::size_t>(it - c.cumulative.begin())];
}

constexpr std::uint64_t kTombBlock = 4096;
constexpr int kMaxRedraws = 1'000'000;

}  // namespace

WorldRun simulate_worlds(const WorldSpec& spec, const NullModel& model,
                         const RRDistribution& null, const CandidateLists& lists,
                         const Lexicon& lexicon, std::size_t workers) {
  spec.validate();
  if (!(spec.shape == model.shape())) {
    throw Error(ErrorCode::InvalidArgument, "world shape differs from the null model's shape");
  }
  const std::size_t n_male = spec.shape.male_slots;
  const std::size_t n_slots = n_male + spec.shape.female_slots;

  // Fixed slot -> planted choice (if any).
  std::vector<std::optional<PlantChoice>> planted(n_slots);
  if (spec.mode == WorldMode::h1_planted) {
    std::size_t next_male = 0, next_female = n_male;
    for (const auto& p : spec.plant) {
      PlantedName name{p.gender, nfc(p.generic),
                       p.rendition ? std::optional<std::string>(nfc(*p.rendition)) : std::nullopt};
      const std::size_t slot = p.gender == Gender::male ? next_male++ : next_female++;
      planted[slot] = plant_choice(name, spec.rendition_sampling, model.distribution(p.gender),
                                   lists.for_gender(p.gender), lexicon);
    }
  }

  WorldRun run;
  run.spec = spec;
  run.slots_per_tomb = n_slots;
  run.atoms.resize(spec.n_tombs * n_slots);
  run.rr.resize(spec.n_tombs);
  run.alpha.resize(spec.n_tombs);

  const std::uint64_t n_blocks = (spec.n_tombs + kTombBlock - 1) / kTombBlock;
  parallel_blocks(n_blocks, workers, [&](std::size_t b) {
    std::vector<double> factors, divisors;
    const std::uint64_t end = std::min(spec.n_tombs, (b + 1) * kTombBlock);
    for (std::uint64_t t = b * kTombBlock; t < end; ++t) {
      SplitMix64 rng(mix_seed(spec.seed, t));
      AtomIndex* slots = run.atoms.data() + t * n_slots;
      const std::span<const AtomIndex> male(slots, n_male);
      const std::span<const AtomIndex> female(slots + n_male, n_slots - n_male);
      for (int attempt = 0;; ++attempt) {
        if (attempt == kMaxRedraws) {
          throw Error(ErrorCode::DegenerateInputs, "validity filter rejects nearly every tomb");
        }
        for (std::size_t s = 0; s < n_slots; ++s) {
          const double u = unit_interval(rng());
          slots[s] = planted[s] ? pick(*planted[s], u)
                                : model.draw(s < n_male ? Gender::male : Gender::female, u);
        }
        if (spec.mode == WorldMode::h1_planted) break;
        const double w = model.acceptance(male, female);
        if (w >= 1.0) break;
        if (w > 0.0 && unit_interval(rng()) < w) break;
      }
      run.rr[t] = model.cluster_rr(male, female, factors, divisors);
      run.alpha[t] = null.tail(run.rr[t]);
    }
  });
  return run;
}

WorldRun simulate_worlds(const WorldSpec& spec, const CandidateLists& lists,
                         const Lexicon& lexicon, const BonusPolicy& bonuses,
                         const ValidityFilter& filter, const SimulationOptions& options) {
  const auto model = NullModel::build(spec.shape, lists, lexicon, bonuses, filter);
  const auto null = rr_distribution(model, {options.enumeration_budget, options.workers});
  return simulate_worlds(spec, model, null, lists, lexicon, options.workers);
}

OperatingCharacteristics operating_characteristics(const WorldRun& h0, const WorldRun& h1,
                                                   const std::vector<double>& alpha_grid) {
  if (h0.size() == 0 || h1.size() == 0) {
    throw Error(ErrorCode::InvalidArgument, "operating characteristics need nonempty runs");
  }
  auto sorted = [](std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  const auto a0 = sorted(h0.alpha);
  const auto a1 = sorted(h1.alpha);
  auto grid = alpha_grid;
  std::sort(grid.begin(), grid.end());
  OperatingCharacteristics oc;
  for (double a : grid) {
    OperatingPoint p;
    p.threshold = a;
    p.h0_tombs = a0.size();
    p.h0_flagged = static_cast<std::uint64_t>(std::upper_bound(a0.begin(), a0.end(), a) - a0.begin());
    p.false_positive_rate = static_cast<double>(p.h0_flagged) / static_cast<double>(p.h0_tombs);
    p.false_positive_se = std::sqrt(p.false_positive_rate * (1.0 - p.false_positive_rate) /
                                    static_cast<double>(p.h0_tombs));
    p.h1_tombs = a1.size();
    p.h1_flagged = static_cast<std::uint64_t>(std::upper_bound(a1.begin(), a1.end(), a) - a1.begin());
    p.detection_rate = static_cast<double>(p.h1_flagged) / static_cast<double>(p.h1_tombs);
    p.detection_se = std::sqrt(p.detection_rate * (1.0 - p.detection_rate) /
                               static_cast<double>(p.h1_tombs));
    oc.points.push_back(p);
  }
  return oc;
}

ScenarioComparison scenario_comparison(const WorldRun& run, const NullModel& model,
                                       const std::vector<Scenario>& scenarios,
                                       const CandidateLists& lists, const Lexicon& lexicon,
                                       double prior_pi, std::uint64_t max_tombs,
                                       std::size_t workers) {
  const std::uint64_t n = std::min<std::uint64_t>(run.size(), max_tombs);
  std::vector<double> posteriors(n);
  const std::uint64_t n_blocks = (n + 255) / 256;
  parallel_blocks(n_blocks, workers, [&](std::size_t b) {
    const std::uint64_t end = std::min<std::uint64_t>(n, (b + 1) * 256);
    for (std::uint64_t t = b * 256; t < end; ++t) {
      const auto tomb = run.tomb(t, model);
      posteriors[t] = scenario_posterior(scenarios, tomb, lists, lexicon, prior_pi).posterior;
    }
  });
  ScenarioComparison out;
  out.tombs = n;
  CompensatedSum sum;
  std::uint64_t flagged = 0;
  for (double p : posteriors) {
    sum += p;
    if (p > 0.5) ++flagged;
  }
  if (n > 0) {
    out.mean_posterior = sum.value() / static_cast<double>(n);
    out.flagged_rate = static_cast<double>(flagged) / static_cast<double>(n);
  }
  return out;
}

}  // namespace rrv
