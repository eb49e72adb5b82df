#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rrv/inference.hpp"
#include "rrv/lexicon.hpp"
#include "rrv/rr_engine.hpp"
#include "rrv/tail_area.hpp"

namespace rrv {

// Everything the provisos fix for one analysis: lexicon, lists, bonuses, the
// observed tomb, the validity filter and the multiplicity settings.
struct AnalysisConfig {
  Lexicon lexicon;
  CandidateLists lists;
  BonusPolicy bonuses;
  TombConfiguration configuration;
  ValidityFilter filter;
  std::uint64_t population_male = 4400;
  std::uint64_t population_female = 2200;
  std::optional<std::uint64_t> n_trials;  // overrides the population estimate
  MultiplicityMethod method = MultiplicityMethod::union_bound;
  double enumeration_budget = kDefaultEnumerationBudget;

  std::uint64_t trials() const;
};

NullModel null_model(const AnalysisConfig& config);

struct AnalysisResult {
  RRBreakdown breakdown;
  ConfigurationShape shape;
  TailResult tail;
  std::uint64_t n_trials = 0;
  double q = 0.0;
  std::vector<PosteriorResult> posteriors;
};

// Cluster RR, exact tail at `threshold` (the observed cluster RR when unset),
// multiplicity bound and posteriors over `thetas`.
AnalysisResult analyze(const AnalysisConfig& config, const std::vector<double>& thetas,
                       std::optional<double> threshold = std::nullopt, std::size_t workers = 1);

}  // namespace rrv
