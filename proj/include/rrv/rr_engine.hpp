#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "rrv/lexicon.hpp"
#include "rrv/onomasticon.hpp"

namespace rrv {

// Either a generic name (Yoseph) or one rendition of it (Yoseph:Yoseh).
struct CandidateEntry {
  std::string generic;
  std::optional<std::string> rendition;

  bool is_rendition() const noexcept { return rendition.has_value(); }
  std::string label() const;

  friend bool operator==(const CandidateEntry&, const CandidateEntry&) = default;
  friend auto operator<=>(const CandidateEntry&, const CandidateEntry&) = default;
};

CandidateEntry generic_entry(std::string generic);
CandidateEntry rendition_entry(std::string generic, std::string rendition);

// The a priori list for one gender. `excluded` entries are names that must
// score as Other even when a broader entry (their generic) is listed; this is
// how an entry is demoted without the name falling back to its generic.
struct CandidateList {
  Gender gender = Gender::male;
  std::vector<CandidateEntry> entries;
  std::vector<CandidateEntry> excluded;
  double other_rr = 1.0;

  bool contains(const CandidateEntry& e) const;
  void validate() const;
};

struct CandidateLists {
  CandidateList male{Gender::male, {}, {}, 1.0};
  CandidateList female{Gender::female, {}, {}, 1.0};

  const CandidateList& for_gender(Gender g) const { return g == Gender::male ? male : female; }
  CandidateList& for_gender(Gender g) { return g == Gender::male ? male : female; }
};

struct BonusRule {
  std::string father_generic;
  std::string son_generic;
  double divisor = 1.2;

  friend bool operator==(const BonusRule&, const BonusRule&) = default;
};

enum class BonusMatch {
  generic,        // any matched entry of the generic (a Yoseh father counts as Yoseph)
  generic_entry,  // only the Generic(g) entry itself
};

struct BonusPolicy {
  std::vector<BonusRule> rules;
  BonusMatch match = BonusMatch::generic;
};

// Whether a rule fires for a (father, son) pair of matched entries. Edges with
// an Other endpoint never earn a bonus.
bool bonus_applies(const BonusRule& rule, BonusMatch match, const CandidateEntry& father,
                   const CandidateEntry& son);

struct Inscription {
  Gender gender = Gender::male;
  std::string generic;
  std::optional<std::string> rendition;
  bool discarded = false;
  std::string ossuary;  // free-form label, e.g. "#4"
};

struct GenerationalEdge {
  std::size_t father = 0;
  std::size_t son = 0;

  friend bool operator==(const GenerationalEdge&, const GenerationalEdge&) = default;
};

struct TombConfiguration {
  std::vector<Inscription> inscriptions;
  std::vector<GenerationalEdge> edges;

  // Edge endpoints in range, distinct and male; each inscription is a son at
  // most once. Throws Error(InvalidConfiguration).
  void validate() const;
};

// Most specific match: Rendition(g, r) beats Generic(g); nullopt is Other.
std::optional<CandidateEntry> match_candidate(const Inscription& insc, const CandidateList& list);

// Frequency of a matched entry: generic frequency, times the conditional
// rendition frequency for rendition entries.
double entry_frequency(const CandidateEntry& entry, Gender gender, const Lexicon& lexicon);

double rr_value(const Inscription& insc, const CandidateList& list, const Lexicon& lexicon);

struct SlotFactor {
  std::size_t inscription = 0;
  std::optional<CandidateEntry> match;  // nullopt = Other (or discarded)
  bool discarded = false;
  double rr = 1.0;  // 1 for discarded slots, which do not enter the product
};

struct AppliedBonus {
  BonusRule rule;
  GenerationalEdge edge;
};

struct RRBreakdown {
  std::vector<SlotFactor> per_slot;
  std::vector<AppliedBonus> bonuses;
  double pre_bonus_rr = 1.0;
  double cluster_rr = 1.0;

  // Cluster RR recomputed from the listed factors and divisors.
  double recompute() const;
};

RRBreakdown cluster_rr(const TombConfiguration& config, const CandidateLists& lists,
                       const Lexicon& lexicon, const BonusPolicy& bonuses);

}  // namespace rrv
