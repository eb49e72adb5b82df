#include "rrv/inference.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

#include "rrv/error.hpp"
#include "rrv/text.hpp"

namespace rrv {

std::string_view to_string(MultiplicityMethod m) noexcept {
  return m == MultiplicityMethod::union_bound ? "union_bound" : "exact_complement";
}

MultiplicityMethod parse_multiplicity_method(std::string_view text) {
  if (text == "union_bound") return MultiplicityMethod::union_bound;
  if (text == "exact_complement") return MultiplicityMethod::exact_complement;
  throw Error(ErrorCode::InvalidArgument, "unknown multiplicity method '" + std::string(text) + "'");
}

void InferenceInputs::validate() const {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw Error(ErrorCode::InvalidArgument, "alpha outside [0, 1]");
  if (n_trials < 1) throw Error(ErrorCode::InvalidArgument, "n_trials must be positive");
  if (!(theta >= 0.0 && theta <= 1.0)) throw Error(ErrorCode::InvalidArgument, "theta outside [0, 1]");
  if (population_male < 1 || population_female < 1) {
    throw Error(ErrorCode::InvalidArgument, "populations must be positive");
  }
}

std::uint64_t trials_estimate(std::uint64_t population_male, std::uint64_t population_female,
                              const ConfigurationShape& shape) {
  std::optional<std::uint64_t> n;
  auto take = [&](std::uint64_t population, std::size_t slots) {
    if (slots == 0) return;
    const std::uint64_t per = population / slots;
    n = n ? std::min(*n, per) : per;
  };
  take(population_male, shape.male_slots);
  take(population_female, shape.female_slots);
  if (!n) throw Error(ErrorCode::ZeroSlots, "shape has no slots");
  return *n;
}

double multiplicity_bound(double alpha, std::uint64_t n_trials, MultiplicityMethod method) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw Error(ErrorCode::InvalidArgument, "alpha outside [0, 1]");
  if (n_trials < 1) throw Error(ErrorCode::InvalidArgument, "n_trials must be positive");
  const double n = static_cast<double>(n_trials);
  if (method == MultiplicityMethod::union_bound) return std::min(1.0, n * alpha);
  // 1 - (1 - alpha)^N without cancellation for tiny alpha.
  if (alpha == 1.0) return 1.0;
  return -std::expm1(n * std::log1p(-alpha));
}

double posterior(double theta, double q) {
  if (!(theta >= 0.0 && theta <= 1.0) || !(q >= 0.0 && q <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "theta and q must lie in [0, 1]");
  }
  if (theta + q == 0.0) throw Error(ErrorCode::DegenerateInputs, "theta = q = 0");
  return theta / (theta + q);
}

std::vector<PosteriorResult> posterior_chain(double alpha, std::uint64_t n_trials,
                                             const std::vector<double>& thetas,
                                             MultiplicityMethod method) {
  const double q = multiplicity_bound(alpha, n_trials, method);
  std::vector<PosteriorResult> out;
  out.reserve(thetas.size());
  for (double theta : thetas) out.push_back({theta, q, posterior(theta, q), method});
  return out;
}

bool ScenarioName::matches(const Inscription& insc) const {
  if (insc.gender != gender || nfc(insc.generic) != generic) return false;
  if (!rendition) return true;
  return insc.rendition && nfc(*insc.rendition) == *rendition;
}

std::string ScenarioName::label() const {
  return rendition ? generic + ":" + *rendition : generic;
}

void Scenario::validate() const {
  if (names.empty() && generations.empty()) {
    throw Error(ErrorCode::InvalidConfiguration, "scenario '" + name + "' requires nothing");
  }
  for (const auto& g : generations) {
    if (g.father.gender != Gender::male || g.son.gender != Gender::male) {
      throw Error(ErrorCode::InvalidConfiguration,
                  "scenario '" + name + "' has a generational requirement on a woman");
    }
  }
  for (const auto& n : names) {
    if (n.generic.empty()) {
      throw Error(ErrorCode::InvalidConfiguration, "scenario '" + name + "' has an empty name");
    }
  }
}

namespace {

struct ObservedSlot {
  Gender gender;
  std::size_t inscription;
  std::size_t atom;
  double probability;
  bool structured;
};

struct Observed {
  std::vector<ObservedSlot> slots;  // male slots first, then female
  std::vector<GenerationalEdge> edges;  // over slot indices
  std::size_t male_slots = 0;
  std::size_t female_slots = 0;
};

Observed observe(const TombConfiguration& config, const CandidateLists& lists,
                 const Lexicon& lexicon) {
  const auto mapping = shape_of(config);
  const auto male = slot_distribution(lists.male, lexicon);
  const auto female = slot_distribution(lists.female, lexicon);
  Observed out;
  out.male_slots = mapping.shape.male_slots;
  out.female_slots = mapping.shape.female_slots;
  auto add = [&](std::size_t insc, const SlotDistribution& dist, const CandidateList& list) {
    const auto& inscription = config.inscriptions[insc];
    const auto atom = dist.atom_index(inscription, list);
    out.slots.push_back({inscription.gender, insc, atom, dist.atoms[atom].probability, false});
  };
  for (auto i : mapping.male_inscriptions) add(i, male, lists.male);
  for (auto i : mapping.female_inscriptions) add(i, female, lists.female);
  out.edges = mapping.shape.edges;
  for (const auto& e : out.edges) {
    out.slots[e.father].structured = true;
    out.slots[e.son].structured = true;
  }
  return out;
}

// Probability of the unexplained slots: structured slots by role, free slots
// of each gender as a multiset.
double unexplained_probability(const Observed& obs, const std::vector<bool>& explained) {
  double p = 1.0;
  std::map<std::pair<Gender, std::size_t>, int> counts;
  std::map<Gender, int> totals;
  for (std::size_t s = 0; s < obs.slots.size(); ++s) {
    if (explained[s]) continue;
    const auto& slot = obs.slots[s];
    p *= slot.probability;
    if (!slot.structured) {
      ++counts[{slot.gender, slot.atom}];
      ++totals[slot.gender];
    }
  }
  for (const auto& [g, n] : totals) {
    for (int k = 2; k <= n; ++k) p *= k;
  }
  for (const auto& [key, c] : counts) {
    for (int k = 2; k <= c; ++k) p /= k;
  }
  return p;
}

}  // namespace

double configuration_probability(const TombConfiguration& observed, const CandidateLists& lists,
                                 const Lexicon& lexicon) {
  const auto obs = observe(observed, lists, lexicon);
  return unexplained_probability(obs, std::vector<bool>(obs.slots.size(), false));
}

double scenario_likelihood(const Scenario& scenario, const TombConfiguration& observed,
                           const CandidateLists& lists, const Lexicon& lexicon) {
  scenario.validate();
  const auto obs = observe(observed, lists, lexicon);

  std::size_t need_male = 2 * scenario.generations.size();
  std::size_t need_female = 0;
  for (const auto& n : scenario.names) (n.gender == Gender::male ? need_male : need_female)++;
  if (need_male > obs.male_slots || need_female > obs.female_slots) {
    throw Error(ErrorCode::InconsistentScenario,
                "scenario '" + scenario.name + "' requires more names than the tomb has slots");
  }

  std::vector<bool> explained(obs.slots.size(), false);
  std::vector<bool> edge_used(obs.edges.size(), false);
  double best = 0.0;
  const auto inscription = [&](std::size_t slot) -> const Inscription& {
    return observed.inscriptions[obs.slots[slot].inscription];
  };

  // Profile over assignments of requirements to observed slots: the best
  // explanation of the data under this scenario.
  std::function<void(std::size_t)> assign_names = [&](std::size_t k) {
    if (k == scenario.names.size()) {
      best = std::max(best, unexplained_probability(obs, explained));
      return;
    }
    const auto& want = scenario.names[k];
    for (std::size_t s = 0; s < obs.slots.size(); ++s) {
      if (explained[s] || !want.matches(inscription(s))) continue;
      explained[s] = true;
      assign_names(k + 1);
      explained[s] = false;
    }
  };
  std::function<void(std::size_t)> assign_generations = [&](std::size_t k) {
    if (k == scenario.generations.size()) {
      assign_names(0);
      return;
    }
    const auto& want = scenario.generations[k];
    for (std::size_t e = 0; e < obs.edges.size(); ++e) {
      const auto& edge = obs.edges[e];
      if (edge_used[e] || explained[edge.father] || explained[edge.son]) continue;
      if (!want.father.matches(inscription(edge.father)) || !want.son.matches(inscription(edge.son))) {
        continue;
      }
      edge_used[e] = explained[edge.father] = explained[edge.son] = true;
      assign_generations(k + 1);
      edge_used[e] = explained[edge.father] = explained[edge.son] = false;
    }
  };
  assign_generations(0);
  return best;
}

ScenarioPosterior scenario_posterior(const std::vector<Scenario>& scenarios,
                                     const TombConfiguration& observed,
                                     const CandidateLists& lists, const Lexicon& lexicon,
                                     double prior_pi) {
  if (scenarios.empty()) throw Error(ErrorCode::InvalidArgument, "no scenarios given");
  if (!(prior_pi > 0.0 && prior_pi < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "prior_pi must lie in (0, 1)");
  }
  ScenarioPosterior out;
  for (const auto& s : scenarios) {
    const double l = scenario_likelihood(s, observed, lists, lexicon);
    out.scenario_likelihoods.push_back(l);
  }
  double sum = 0.0;
  for (double l : out.scenario_likelihoods) sum += l;
  out.p_data_h1 = sum / static_cast<double>(scenarios.size());
  out.p_data_h0 = configuration_probability(observed, lists, lexicon);
  const double h1 = out.p_data_h1 * prior_pi;
  const double h0 = out.p_data_h0 * (1.0 - prior_pi);
  out.posterior = h1 + h0 > 0.0 ? h1 / (h1 + h0) : 0.0;
  return out;
}

}  // namespace rrv
