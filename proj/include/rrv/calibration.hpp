#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rrv/inference.hpp"
#include "rrv/tail_area.hpp"

namespace rrv {

enum class WorldMode { h0_random, h1_planted };
std::string_view to_string(WorldMode m) noexcept;

struct PlantedName {
  Gender gender = Gender::male;
  std::string generic;
  std::optional<std::string> rendition;
};

// A simulated population of tombs with known ground truth. Planted male
// names take male slots 0, 1, ... in order (female likewise); plant_edges
// index into `plant` and must coincide with edges of the shape.
struct WorldSpec {
  WorldMode mode = WorldMode::h0_random;
  ConfigurationShape shape;
  std::uint64_t n_tombs = 1;
  std::uint64_t seed = 0;
  std::vector<PlantedName> plant;
  std::vector<GenerationalEdge> plant_edges;
  bool rendition_sampling = true;

  void validate() const;
};

struct WorldRun {
  WorldSpec spec;
  std::size_t slots_per_tomb = 0;
  std::vector<AtomIndex> atoms;  // tomb-major: male slots then female slots
  std::vector<double> rr;
  std::vector<double> alpha;

  std::size_t size() const noexcept { return rr.size(); }
  std::span<const AtomIndex> male_atoms(std::size_t tomb) const;
  std::span<const AtomIndex> female_atoms(std::size_t tomb) const;
  // Inscriptions rebuilt from the drawn atoms (Other slots get the name
  // "(other)"), with the shape's edges.
  TombConfiguration tomb(std::size_t index, const NullModel& model) const;
};

struct SimulationOptions {
  std::size_t workers = 1;
  double enumeration_budget = kDefaultEnumerationBudget;
};

// Draws spec.n_tombs tombs. Random slots (all of them under H0) come from the
// null model; under H0 tombs are redrawn until they pass the model's
// validity filter. Each tomb's alpha is its exact tail area under `null`.
WorldRun simulate_worlds(const WorldSpec& spec, const NullModel& model,
                         const RRDistribution& null, const CandidateLists& lists,
                         const Lexicon& lexicon, std::size_t workers = 1);

WorldRun simulate_worlds(const WorldSpec& spec, const CandidateLists& lists,
                         const Lexicon& lexicon, const BonusPolicy& bonuses,
                         const ValidityFilter& filter = ValidityFilter::accept_all(),
                         const SimulationOptions& options = {});

struct OperatingPoint {
  double threshold = 0.0;
  std::uint64_t h0_tombs = 0;
  std::uint64_t h0_flagged = 0;
  double false_positive_rate = 0.0;
  double false_positive_se = 0.0;
  std::uint64_t h1_tombs = 0;
  std::uint64_t h1_flagged = 0;
  double detection_rate = 0.0;
  double detection_se = 0.0;
};

struct ScenarioComparison {
  std::uint64_t tombs = 0;
  double mean_posterior = 0.0;
  double flagged_rate = 0.0;  // posterior > 0.5
};

struct OperatingCharacteristics {
  std::vector<OperatingPoint> points;
  std::optional<ScenarioComparison> h0_scenario;
  std::optional<ScenarioComparison> h1_scenario;
};

// A tomb is flagged at threshold a when its exact tail alpha <= a.
OperatingCharacteristics operating_characteristics(const WorldRun& h0, const WorldRun& h1,
                                                   const std::vector<double>& alpha_grid);

// Scenario comparator evaluated on (up to max_tombs of) the same worlds.
ScenarioComparison scenario_comparison(const WorldRun& run, const NullModel& model,
                                       const std::vector<Scenario>& scenarios,
                                       const CandidateLists& lists, const Lexicon& lexicon,
                                       double prior_pi, std::uint64_t max_tombs,
                                       std::size_t workers = 1);

}  // namespace rrv
