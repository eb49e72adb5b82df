#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rrv/lexicon.hpp"
#include "rrv/rr_engine.hpp"
#include "rrv/tail_area.hpp"

namespace rrv {

enum class MultiplicityMethod { union_bound, exact_complement };
std::string_view to_string(MultiplicityMethod m) noexcept;
MultiplicityMethod parse_multiplicity_method(std::string_view text);

struct InferenceInputs {
  double alpha = 1.0 / 1'821'000.0;
  std::uint64_t n_trials = 1100;
  double theta = 1.0;
  std::uint64_t population_male = 4400;
  std::uint64_t population_female = 2200;

  void validate() const;
};

struct PosteriorResult {
  double theta = 0.0;
  double q = 0.0;
  double posterior = 0.0;
  MultiplicityMethod method = MultiplicityMethod::union_bound;
};

// Number of comparable tombs the population could fill:
// floor(min(population / slots)) over the genders the shape uses.
std::uint64_t trials_estimate(std::uint64_t population_male, std::uint64_t population_female,
                              const ConfigurationShape& shape);

// Probability that at least one of N independent null tombs reaches tail
// area alpha: N*alpha capped at 1, or 1 - (1 - alpha)^N.
double multiplicity_bound(double alpha, std::uint64_t n_trials, MultiplicityMethod method);

// theta / (theta + q). This closed form is a reconstruction that matches the
// published posteriors; it is not claimed to be the original derivation.
double posterior(double theta, double q);

std::vector<PosteriorResult> posterior_chain(double alpha, std::uint64_t n_trials,
                                             const std::vector<double>& thetas,
                                             MultiplicityMethod method);

struct ScenarioName {
  Gender gender = Gender::male;
  std::string generic;
  std::optional<std::string> rendition;  // nullopt = any rendition

  bool matches(const Inscription& insc) const;
  std::string label() const;
};

struct ScenarioGeneration {
  ScenarioName father;
  ScenarioName son;
};

// One configuration of names an H1 tomb is expected to contain.
struct Scenario {
  std::string name;
  std::vector<ScenarioName> names;
  std::vector<ScenarioGeneration> generations;

  void validate() const;
};

struct ScenarioPosterior {
  double p_data_h1 = 0.0;
  double p_data_h0 = 0.0;
  double posterior = 0.0;
  std::vector<double> scenario_likelihoods;  // P(D | H1, scenario), in input order
};

// Probability of the observed configuration under independent draws from the
// null model: edge slots keep their roles, other slots of a gender are an
// unordered multiset over atoms.
double configuration_probability(const TombConfiguration& observed, const CandidateLists& lists,
                                 const Lexicon& lexicon);

// Probability of the observed configuration when the scenario's names are
// planted and the remaining slots are drawn at random. Zero when the
// observation cannot contain the scenario.
double scenario_likelihood(const Scenario& scenario, const TombConfiguration& observed,
                           const CandidateLists& lists, const Lexicon& lexicon);

// Bayesian comparator averaging over equally probable scenarios with prior
// probability prior_pi on H1.
ScenarioPosterior scenario_posterior(const std::vector<Scenario>& scenarios,
                                     const TombConfiguration& observed,
                                     const CandidateLists& lists, const Lexicon& lexicon,
                                     double prior_pi);

}  // namespace rrv
