#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rrv/lexicon.hpp"
#include "rrv/rr_engine.hpp"

namespace rrv {

// Number of male and female slots in a tomb plus father-son edges between
// male slots (indices are male-slot indices, not inscription indices).
struct ConfigurationShape {
  std::size_t male_slots = 0;
  std::size_t female_slots = 0;
  std::vector<GenerationalEdge> edges;

  std::size_t slots(Gender g) const { return g == Gender::male ? male_slots : female_slots; }
  void validate() const;

  friend bool operator==(const ConfigurationShape&, const ConfigurationShape&) = default;
};

// Shape of the non-discarded part of a configuration, with the inscription
// index behind every slot.
struct ShapeMapping {
  ConfigurationShape shape;
  std::vector<std::size_t> male_inscriptions;
  std::vector<std::size_t> female_inscriptions;
};

ShapeMapping shape_of(const TombConfiguration& config);

struct Atom {
  double probability = 0.0;
  double rr = 1.0;
  std::optional<CandidateEntry> entry;  // nullopt = Other

  bool is_other() const noexcept { return !entry.has_value(); }
  std::string label() const { return entry ? entry->label() : std::string("Other"); }
  const std::string& generic() const;
};

// Law of one slot under random draws from the lexicon: one atom per listed
// entry that can be drawn, plus Other absorbing the remainder.
struct SlotDistribution {
  Gender gender = Gender::male;
  std::vector<Atom> atoms;

  double total_probability() const;
  // Atom an observed inscription falls into under `list`.
  std::size_t atom_index(const Inscription& insc, const CandidateList& list) const;
  std::optional<std::size_t> other_index() const;
};

SlotDistribution slot_distribution(const CandidateList& list, const Lexicon& lexicon);

using AtomIndex = std::uint16_t;

// One drawn tomb: atom indices per male and female slot.
struct SampledTomb {
  std::span<const AtomIndex> male;
  std::span<const AtomIndex> female;
  const SlotDistribution* male_distribution = nullptr;
  const SlotDistribution* female_distribution = nullptr;
  const ConfigurationShape* shape = nullptr;
};

// Which random configurations count as valid samples. acceptance() returns
// the probability that a configuration is kept: 0 or 1 for a predicate,
// scaled by an optional uniform keep probability.
class ValidityFilter {
 public:
  using Predicate = std::function<bool(const SampledTomb&)>;

  static ValidityFilter accept_all();
  // Rejects tombs where two slots of the same gender draw the same listed
  // candidate entry.
  static ValidityFilter distinct_candidates();
  static ValidityFilter custom(std::string name, Predicate predicate);
  ValidityFilter with_accept_probability(double p) const;

  double acceptance(const SampledTomb& tomb) const;
  const std::string& name() const noexcept { return name_; }
  double accept_probability() const noexcept { return accept_probability_; }
  std::string describe() const;

 private:
  std::string name_ = "accept_all";
  Predicate predicate_;
  double accept_probability_ = 1.0;
};

// Evaluates cluster RR for atom combinations of one shape; shared by exact
// enumeration, Monte Carlo and the calibration simulator so that all of them
// score a combination identically.
class NullModel {
 public:
  NullModel(ConfigurationShape shape, SlotDistribution male, SlotDistribution female,
            BonusPolicy bonuses, ValidityFilter filter = ValidityFilter::accept_all());

  static NullModel build(const ConfigurationShape& shape, const CandidateLists& lists,
                         const Lexicon& lexicon, const BonusPolicy& bonuses,
                         ValidityFilter filter = ValidityFilter::accept_all());

  // `scratch` is reused between calls; one per thread.
  double cluster_rr(std::span<const AtomIndex> male, std::span<const AtomIndex> female,
                    std::vector<double>& scratch_factors,
                    std::vector<double>& scratch_divisors) const;
  double probability(std::span<const AtomIndex> male, std::span<const AtomIndex> female) const;
  double acceptance(std::span<const AtomIndex> male, std::span<const AtomIndex> female) const;

  // Draws one atom for a slot of the given gender from a uniform in [0,1).
  AtomIndex draw(Gender g, double u) const;

  const ConfigurationShape& shape() const noexcept { return shape_; }
  const SlotDistribution& distribution(Gender g) const {
    return g == Gender::male ? male_ : female_;
  }
  const BonusPolicy& bonuses() const noexcept { return bonuses_; }
  const ValidityFilter& filter() const noexcept { return filter_; }
  // Product of per-slot support sizes.
  double combinations() const;

 private:
  ConfigurationShape shape_;
  SlotDistribution male_;
  SlotDistribution female_;
  BonusPolicy bonuses_;
  ValidityFilter filter_;
  std::vector<std::vector<double>> pair_divisors_;  // [father * K + son]
  std::vector<double> male_cdf_;
  std::vector<double> female_cdf_;
};

inline constexpr double kDefaultEnumerationBudget = 1e8;

// The whole null distribution of cluster RR for a shape, restricted to valid
// configurations (acceptance-weighted). Support sorted ascending.
class RRDistribution {
 public:
  RRDistribution(std::vector<double> rr, std::vector<double> mass, double raw_mass,
                 std::uint64_t combinations);

  // P(RR <= t | valid).
  double tail(double threshold) const;
  // P(alpha(RR) <= a | valid): the largest achievable tail value not above a.
  double probability_alpha_at_most(double a) const;
  // Achievable tail values, ascending (one per support point).
  std::vector<double> achievable_alphas() const;

  const std::vector<double>& support() const noexcept { return rr_; }
  const std::vector<double>& masses() const noexcept { return mass_; }
  double accepted_mass() const noexcept { return accepted_mass_; }
  double raw_mass() const noexcept { return raw_mass_; }
  std::uint64_t combinations() const noexcept { return combinations_; }

 private:
  std::vector<double> rr_;
  std::vector<double> mass_;
  std::vector<double> cumulative_;
  double accepted_mass_ = 0.0;
  double raw_mass_ = 0.0;
  std::uint64_t combinations_ = 0;
};

struct EnumerationOptions {
  double budget = kDefaultEnumerationBudget;
  std::size_t workers = 1;
};

RRDistribution rr_distribution(const NullModel& model, const EnumerationOptions& options = {});

enum class TailMethod { exact, monte_carlo };
std::string_view to_string(TailMethod m) noexcept;

struct TailResult {
  double threshold = 0.0;
  double alpha = 0.0;
  TailMethod method = TailMethod::exact;
  double accepted_fraction = 1.0;  // measured beta
  std::uint64_t combinations = 0;  // exact only
  std::optional<std::uint64_t> n_samples;
  std::optional<std::uint64_t> accepted_samples;
  std::optional<std::uint64_t> hits;
  std::optional<double> std_error;
  std::optional<std::uint64_t> seed;
};

TailResult exact_tail(const NullModel& model, double threshold,
                      const EnumerationOptions& options = {});

TailResult exact_tail(const ConfigurationShape& shape, const SlotDistribution& male,
                      const SlotDistribution& female, const BonusPolicy& bonuses,
                      double threshold, const ValidityFilter& filter,
                      const EnumerationOptions& options = {});

struct MonteCarloOptions {
  std::uint64_t n_samples = 1'000'000;
  std::uint64_t seed = 0;
  std::size_t workers = 1;
};

TailResult mc_tail(const NullModel& model, double threshold, const MonteCarloOptions& options);

TailResult mc_tail(const ConfigurationShape& shape, const CandidateLists& lists,
                   const Lexicon& lexicon, const BonusPolicy& bonuses, double threshold,
                   const ValidityFilter& filter, std::uint64_t n_samples, std::uint64_t seed,
                   std::size_t workers = 1);

struct SampleCount {
  std::string raw;     // exact decimal
  double raw_approx = 0.0;
  double valid = 0.0;  // beta * raw
};

// n1^(male slots) * n2^(female slots), and beta times that.
SampleCount count_samples(std::uint64_t n1, std::uint64_t n2, const ConfigurationShape& shape,
                          double beta);

}  // namespace rrv
