#include "rrv/tail_area.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <unordered_map>

#include <boost/multiprecision/cpp_int.hpp>

#include "rrv/error.hpp"
#include "rrv/numeric.hpp"
#include "rrv/parallel.hpp"

namespace rrv {

void ConfigurationShape::validate() const {
  std::set<std::size_t> sons;
  for (const auto& e : edges) {
    if (e.father >= male_slots || e.son >= male_slots || e.father == e.son) {
      throw Error(ErrorCode::InvalidConfiguration, "shape edge must join two distinct male slots");
    }
    if (!sons.insert(e.son).second) {
      throw Error(ErrorCode::InvalidConfiguration, "male slot is a son in two edges");
    }
  }
}

ShapeMapping shape_of(const TombConfiguration& config) {
  config.validate();
  ShapeMapping out;
  std::vector<std::optional<std::size_t>> male_slot(config.inscriptions.size());
  for (std::size_t i = 0; i < config.inscriptions.size(); ++i) {
    const auto& insc = config.inscriptions[i];
    if (insc.discarded) continue;
    if (insc.gender == Gender::male) {
      male_slot[i] = out.male_inscriptions.size();
      out.male_inscriptions.push_back(i);
    } else {
      out.female_inscriptions.push_back(i);
    }
  }
  for (const auto& e : config.edges) {
    if (male_slot[e.father] && male_slot[e.son]) {
      out.shape.edges.push_back({*male_slot[e.father], *male_slot[e.son]});
    }
  }
  out.shape.male_slots = out.male_inscriptions.size();
  out.shape.female_slots = out.female_inscriptions.size();
  return out;
}

const std::string& Atom::generic() const {
  static const std::string kNone;
  return entry ? entry->generic : kNone;
}

double SlotDistribution::total_probability() const {
  CompensatedSum s;
  for (const auto& a : atoms) s += a.probability;
  return s.value();
}

std::optional<std::size_t> SlotDistribution::other_index() const {
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (atoms[i].is_other()) return i;
  }
  return std::nullopt;
}

std::size_t SlotDistribution::atom_index(const Inscription& insc, const CandidateList& list) const {
  const auto match = match_candidate(insc, list);
  if (!match) return *other_index();
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (atoms[i].entry == match) return i;
  }
  throw Error(ErrorCode::NameNotFound,
              "entry " + match->label() + " has zero probability under the lexicon");
}

SlotDistribution slot_distribution(const CandidateList& list, const Lexicon& lexicon) {
  list.validate();
  SlotDistribution out;
  out.gender = list.gender;
  CompensatedSum listed;
  for (const auto& entry : list.entries) {
    Atom atom;
    atom.entry = entry;
    atom.rr = entry_frequency(entry, list.gender, lexicon);
    if (entry.is_rendition()) {
      atom.probability = atom.rr;
    } else {
      // Renditions scored separately (listed or excluded) are carved out.
      CompensatedSum carved;
      auto carve = [&](const CandidateEntry& other) {
        if (other.is_rendition() && other.generic == entry.generic) {
          carved += entry_frequency(other, list.gender, lexicon);
        }
      };
      for (const auto& other : list.entries) carve(other);
      for (const auto& other : list.excluded) carve(other);
      atom.probability = atom.rr - carved.value();
      if (atom.probability < -1e-15) {
        throw Error(ErrorCode::NegativeMass,
                    "renditions of " + entry.generic + " exceed the generic's frequency");
      }
      atom.probability = std::max(atom.probability, 0.0);
    }
    listed += atom.probability;
    if (atom.probability > 0.0) out.atoms.push_back(std::move(atom));
  }
  double other = 1.0 - listed.value();
  if (other < -1e-12) {
    throw Error(ErrorCode::NegativeMass, "listed candidates carry more than all of the mass");
  }
  Atom other_atom;
  other_atom.probability = std::max(other, 0.0);
  other_atom.rr = list.other_rr;
  out.atoms.push_back(std::move(other_atom));
  if (out.atoms.size() > std::numeric_limits<AtomIndex>::max()) {
    throw Error(ErrorCode::InvalidConfiguration, "candidate list too long");
  }
  return out;
}

ValidityFilter ValidityFilter::accept_all() { return ValidityFilter{}; }

ValidityFilter ValidityFilter::distinct_candidates() {
  auto distinct = [](std::span<const AtomIndex> atoms, const SlotDistribution& dist) {
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      if (dist.atoms[atoms[i]].is_other()) continue;
      for (std::size_t j = i + 1; j < atoms.size(); ++j) {
        if (atoms[i] == atoms[j]) return false;
      }
    }
    return true;
  };
  return custom("distinct_candidates", [distinct](const SampledTomb& t) {
    return distinct(t.male, *t.male_distribution) && distinct(t.female, *t.female_distribution);
  });
}

ValidityFilter ValidityFilter::custom(std::string name, Predicate predicate) {
  ValidityFilter f;
  f.name_ = std::move(name);
  f.predicate_ = std::move(predicate);
  return f;
}

ValidityFilter ValidityFilter::with_accept_probability(double p) const {
  if (!(p > 0.0 && p <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "accept probability must lie in (0, 1]");
  }
  ValidityFilter f = *this;
  f.accept_probability_ = p;
  return f;
}

double ValidityFilter::acceptance(const SampledTomb& tomb) const {
  if (predicate_ && !predicate_(tomb)) return 0.0;
  return accept_probability_;
}

std::string ValidityFilter::describe() const {
  std::string s = name_;
  if (accept_probability_ < 1.0) {
    s += " (keep probability " + std::to_string(accept_probability_) + ")";
  }
  return s;
}

NullModel::NullModel(ConfigurationShape shape, SlotDistribution male, SlotDistribution female,
                     BonusPolicy bonuses, ValidityFilter filter)
    : shape_(std::move(shape)),
      male_(std::move(male)),
      female_(std::move(female)),
      bonuses_(std::move(bonuses)),
      filter_(std::move(filter)) {
  shape_.validate();
  if (male_.gender != Gender::male || female_.gender != Gender::female) {
    throw Error(ErrorCode::InvalidArgument, "slot distributions passed for the wrong gender");
  }
  if (male_.atoms.empty() || female_.atoms.empty()) {
    throw Error(ErrorCode::InvalidArgument, "slot distribution without atoms");
  }
  const std::size_t k = male_.atoms.size();
  pair_divisors_.resize(k * k);
  for (std::size_t f = 0; f < k; ++f) {
    for (std::size_t s = 0; s < k; ++s) {
      const auto& father = male_.atoms[f];
      const auto& son = male_.atoms[s];
      if (father.is_other() || son.is_other()) continue;
      for (const auto& rule : bonuses_.rules) {
        if (bonus_applies(rule, bonuses_.match, *father.entry, *son.entry)) {
          pair_divisors_[f * k + s].push_back(rule.divisor);
        }
      }
    }
  }
  auto cdf = [](const SlotDistribution& d) {
    std::vector<double> c;
    CompensatedSum s;
    for (const auto& a : d.atoms) {
      s += a.probability;
      c.push_back(s.value());
    }
    return c;
  };
  male_cdf_ = cdf(male_);
  female_cdf_ = cdf(female_);
}

NullModel NullModel::build(const ConfigurationShape& shape, const CandidateLists& lists,
                           const Lexicon& lexicon, const BonusPolicy& bonuses,
                           ValidityFilter filter) {
  return NullModel(shape, slot_distribution(lists.male, lexicon),
                   slot_distribution(lists.female, lexicon), bonuses, std::move(filter));
}

double NullModel::cluster_rr(std::span<const AtomIndex> male, std::span<const AtomIndex> female,
                             std::vector<double>& factors, std::vector<double>& divisors) const {
  factors.clear();
  divisors.clear();
  for (auto a : male) factors.push_back(male_.atoms[a].rr);
  for (auto a : female) factors.push_back(female_.atoms[a].rr);
  const std::size_t k = male_.atoms.size();
  for (const auto& e : shape_.edges) {
    const auto& d = pair_divisors_[male[e.father] * k + male[e.son]];
    divisors.insert(divisors.end(), d.begin(), d.end());
  }
  return canonical_ratio(std::span<double>(factors), std::span<double>(divisors));
}

double NullModel::probability(std::span<const AtomIndex> male,
                              std::span<const AtomIndex> female) const {
  double p = 1.0;
  for (auto a : male) p *= male_.atoms[a].probability;
  for (auto a : female) p *= female_.atoms[a].probability;
  return p;
}

double NullModel::acceptance(std::span<const AtomIndex> male,
                             std::span<const AtomIndex> female) const {
  return filter_.acceptance(SampledTomb{male, female, &male_, &female_, &shape_});
}

AtomIndex NullModel::draw(Gender g, double u) const {
  const auto& cdf = g == Gender::male ? male_cdf_ : female_cdf_;
  const double target = u * cdf.back();
  auto it = std::upper_bound(cdf.begin(), cdf.end(), target);
  if (it == cdf.end()) --it;
  return static_cast<AtomIndex>(it - cdf.begin());
}

double NullModel::combinations() const {
  return std::pow(static_cast<double>(male_.atoms.size()), static_cast<double>(shape_.male_slots)) *
         std::pow(static_cast<double>(female_.atoms.size()),
                  static_cast<double>(shape_.female_slots));
}

RRDistribution::RRDistribution(std::vector<double> rr, std::vector<double> mass, double raw_mass,
                               std::uint64_t combinations)
    : rr_(std::move(rr)), mass_(std::move(mass)), raw_mass_(raw_mass), combinations_(combinations) {
  CompensatedSum running;
  cumulative_.reserve(mass_.size());
  for (double m : mass_) {
    running += m;
    cumulative_.push_back(running.value());
  }
  accepted_mass_ = cumulative_.empty() ? 0.0 : cumulative_.back();
  if (!(accepted_mass_ > 0.0)) {
    throw Error(ErrorCode::DegenerateInputs, "no configuration passes the validity filter");
  }
}

double RRDistribution::tail(double threshold) const {
  const auto idx = std::upper_bound(rr_.begin(), rr_.end(), threshold) - rr_.begin();
  if (idx == 0) return 0.0;
  return std::min(1.0, cumulative_[idx - 1] / accepted_mass_);
}

double RRDistribution::probability_alpha_at_most(double a) const {
  double best = 0.0;
  for (double c : cumulative_) {
    const double alpha = std::min(1.0, c / accepted_mass_);
    if (alpha > a) break;
    best = alpha;
  }
  return best;
}

std::vector<double> RRDistribution::achievable_alphas() const {
  std::vector<double> out;
  out.reserve(cumulative_.size());
  for (double c : cumulative_) out.push_back(std::min(1.0, c / accepted_mass_));
  return out;
}

namespace {

constexpr std::uint64_t kEnumerationBlock = 1u << 15;
constexpr std::uint64_t kMonteCarloBlock = 1u << 16;

}  // namespace

RRDistribution rr_distribution(const NullModel& model, const EnumerationOptions& options) {
  const double combos = model.combinations();
  if (combos > options.budget) {
    throw Error(ErrorCode::BudgetExceeded,
                std::to_string(combos) + " combinations exceed the enumeration budget of " +
                    std::to_string(options.budget) + "; use Monte Carlo");
  }
  const auto total = static_cast<std::uint64_t>(combos);
  const auto& shape = model.shape();
  const std::size_t n_male = shape.male_slots;
  const std::size_t n_slots = n_male + shape.female_slots;
  std::vector<std::size_t> radix(n_slots);
  for (std::size_t s = 0; s < n_slots; ++s) {
    radix[s] = model.distribution(s < n_male ? Gender::male : Gender::female).atoms.size();
  }

  struct BlockResult {
    std::vector<std::pair<double, CompensatedSum>> masses;
    CompensatedSum raw;
  };
  const std::uint64_t n_blocks = (total + kEnumerationBlock - 1) / kEnumerationBlock;
  std::vector<BlockResult> blocks(n_blocks);

  parallel_blocks(n_blocks, options.workers, [&](std::size_t b) {
    std::vector<AtomIndex> digits(n_slots);
    std::uint64_t start = b * kEnumerationBlock;
    const std::uint64_t end = std::min(total, start + kEnumerationBlock);
    for (std::size_t s = 0, rest = start; s < n_slots; ++s) {
      digits[s] = static_cast<AtomIndex>(rest % radix[s]);
      rest /= radix[s];
    }
    std::unordered_map<double, CompensatedSum> masses;
    CompensatedSum raw;
    std::vector<double> factors, divisors;
    const std::span<const AtomIndex> male(digits.data(), n_male);
    const std::span<const AtomIndex> female(digits.data() + n_male, n_slots - n_male);
    for (std::uint64_t idx = start; idx < end; ++idx) {
      const double p = model.probability(male, female);
      raw += p;
      if (p > 0.0) {
        const double w = model.acceptance(male, female);
        if (w > 0.0) masses[model.cluster_rr(male, female, factors, divisors)] += p * w;
      }
      for (std::size_t s = 0; s < n_slots; ++s) {
        if (++digits[s] < radix[s]) break;
        digits[s] = 0;
      }
    }
    auto& out = blocks[b];
    out.masses.assign(masses.begin(), masses.end());
    std::sort(out.masses.begin(), out.masses.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    out.raw = raw;
  });

  std::map<double, CompensatedSum> merged;
  CompensatedSum raw;
  for (const auto& block : blocks) {
    for (const auto& [rr, mass] : block.masses) merged[rr] += mass;
    raw += block.raw;
  }
  std::vector<double> rr, mass;
  rr.reserve(merged.size());
  mass.reserve(merged.size());
  for (const auto& [value, m] : merged) {
    rr.push_back(value);
    mass.push_back(m.value());
  }
  return RRDistribution(std::move(rr), std::move(mass), raw.value(), total);
}

std::string_view to_string(TailMethod m) noexcept {
  return m == TailMethod::exact ? "exact" : "monte_carlo";
}

TailResult exact_tail(const NullModel& model, double threshold, const EnumerationOptions& options) {
  const auto dist = rr_distribution(model, options);
  TailResult r;
  r.threshold = threshold;
  r.method = TailMethod::exact;
  r.alpha = dist.tail(threshold);
  r.accepted_fraction = dist.accepted_mass() / dist.raw_mass();
  r.combinations = dist.combinations();
  return r;
}

TailResult exact_tail(const ConfigurationShape& shape, const SlotDistribution& male,
                      const SlotDistribution& female, const BonusPolicy& bonuses,
                      double threshold, const ValidityFilter& filter,
                      const EnumerationOptions& options) {
  return exact_tail(NullModel(shape, male, female, bonuses, filter), threshold, options);
}

TailResult mc_tail(const NullModel& model, double threshold, const MonteCarloOptions& options) {
  if (options.n_samples < 1) {
    throw Error(ErrorCode::InvalidArgument, "Monte Carlo needs at least one sample");
  }
  const auto& shape = model.shape();
  const std::uint64_t n_blocks = (options.n_samples + kMonteCarloBlock - 1) / kMonteCarloBlock;
  struct Counts {
    std::uint64_t accepted = 0;
    std::uint64_t hits = 0;
  };
  std::vector<Counts> counts(n_blocks);
  parallel_blocks(n_blocks, options.workers, [&](std::size_t b) {
    std::mt19937_64 rng(mix_seed(options.seed, b));
    const std::uint64_t begin = b * kMonteCarloBlock;
    const std::uint64_t end = std::min(options.n_samples, begin + kMonteCarloBlock);
    std::vector<AtomIndex> male(shape.male_slots), female(shape.female_slots);
    std::vector<double> factors, divisors;
    Counts c;
    for (std::uint64_t i = begin; i < end; ++i) {
      for (auto& a : male) a = model.draw(Gender::male, unit_interval(rng()));
      for (auto& a : female) a = model.draw(Gender::female, unit_interval(rng()));
      const double w = model.acceptance(male, female);
      if (w <= 0.0) continue;
      if (w < 1.0 && unit_interval(rng()) >= w) continue;
      ++c.accepted;
      if (model.cluster_rr(male, female, factors, divisors) <= threshold) ++c.hits;
    }
    counts[b] = c;
  });

  Counts total;
  for (const auto& c : counts) {
    total.accepted += c.accepted;
    total.hits += c.hits;
  }
  if (total.accepted == 0) {
    throw Error(ErrorCode::DegenerateInputs, "no Monte Carlo sample passed the validity filter");
  }
  TailResult r;
  r.threshold = threshold;
  r.method = TailMethod::monte_carlo;
  r.alpha = static_cast<double>(total.hits) / static_cast<double>(total.accepted);
  r.std_error = std::sqrt(r.alpha * (1.0 - r.alpha) / static_cast<double>(total.accepted));
  r.n_samples = options.n_samples;
  r.accepted_samples = total.accepted;
  r.hits = total.hits;
  r.seed = options.seed;
  r.accepted_fraction =
      static_cast<double>(total.accepted) / static_cast<double>(options.n_samples);
  return r;
}

TailResult mc_tail(const ConfigurationShape& shape, const CandidateLists& lists,
                   const Lexicon& lexicon, const BonusPolicy& bonuses, double threshold,
                   const ValidityFilter& filter, std::uint64_t n_samples, std::uint64_t seed,
                   std::size_t workers) {
  return mc_tail(NullModel::build(shape, lists, lexicon, bonuses, filter), threshold,
                 MonteCarloOptions{n_samples, seed, workers});
}

SampleCount count_samples(std::uint64_t n1, std::uint64_t n2, const ConfigurationShape& shape,
                          double beta) {
  if (n1 < 1 || n2 < 1) throw Error(ErrorCode::InvalidArgument, "populations must be positive");
  if (!(beta > 0.0 && beta <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "beta must lie in (0, 1]");
  }
  using boost::multiprecision::cpp_int;
  const cpp_int raw = boost::multiprecision::pow(cpp_int(n1), static_cast<unsigned>(shape.male_slots)) *
                      boost::multiprecision::pow(cpp_int(n2), static_cast<unsigned>(shape.female_slots));
  SampleCount out;
  out.raw = raw.str();
  out.raw_approx = raw.convert_to<double>();
  out.valid = beta * out.raw_approx;
  return out;
}

}  // namespace rrv
