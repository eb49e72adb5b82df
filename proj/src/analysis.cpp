#include "rrv/analysis.hpp"

namespace rrv {

std::uint64_t AnalysisConfig::trials() const {
  if (n_trials) return *n_trials;
  return trials_estimate(population_male, population_female, shape_of(configuration).shape);
}

NullModel null_model(const AnalysisConfig& config) {
  return NullModel::build(shape_of(config.configuration).shape, config.lists, config.lexicon,
                          config.bonuses, config.filter);
}

AnalysisResult analyze(const AnalysisConfig& config, const std::vector<double>& thetas,
                       std::optional<double> threshold, std::size_t workers) {
  AnalysisResult r;
  r.breakdown = cluster_rr(config.configuration, config.lists, config.lexicon, config.bonuses);
  r.shape = shape_of(config.configuration).shape;
  r.tail = exact_tail(null_model(config), threshold.value_or(r.breakdown.cluster_rr),
                      EnumerationOptions{config.enumeration_budget, workers});
  r.n_trials = config.trials();
  r.q = multiplicity_bound(r.tail.alpha, r.n_trials, config.method);
  for (double theta : thetas) {
    r.posteriors.push_back({theta, r.q, posterior(theta, r.q), config.method});
  }
  return r;
}

}  // namespace rrv
