#include "rrv/rr_engine.hpp"

#include <algorithm>
#include <set>

#include "rrv/error.hpp"
#include "rrv/numeric.hpp"
#include "rrv/text.hpp"

namespace rrv {

std::string CandidateEntry::label() const {
  return rendition ? generic + ":" + *rendition : generic;
}

CandidateEntry generic_entry(std::string generic) {
  return CandidateEntry{nfc(generic), std::nullopt};
}

CandidateEntry rendition_entry(std::string generic, std::string rendition) {
  return CandidateEntry{nfc(generic), nfc(rendition)};
}

bool CandidateList::contains(const CandidateEntry& e) const {
  return std::find(entries.begin(), entries.end(), e) != entries.end();
}

void CandidateList::validate() const {
  if (!(other_rr > 0.0)) {
    throw Error(ErrorCode::InvalidConfiguration, "other_rr must be positive");
  }
  std::set<CandidateEntry> seen;
  for (const auto& e : entries) {
    if (e.generic.empty() || (e.rendition && e.rendition->empty())) {
      throw Error(ErrorCode::InvalidConfiguration, "candidate entry with an empty name");
    }
    if (!seen.insert(e).second) {
      throw Error(ErrorCode::DuplicateKey, "candidate entry " + e.label() + " listed twice");
    }
  }
  for (const auto& e : excluded) {
    if (seen.contains(e)) {
      throw Error(ErrorCode::InvalidConfiguration,
                  "entry " + e.label() + " is both listed and excluded");
    }
  }
}

bool bonus_applies(const BonusRule& rule, BonusMatch match, const CandidateEntry& father,
                   const CandidateEntry& son) {
  if (match == BonusMatch::generic_entry && (father.is_rendition() || son.is_rendition())) {
    return false;
  }
  return father.generic == rule.father_generic && son.generic == rule.son_generic;
}

void TombConfiguration::validate() const {
  std::set<std::size_t> sons;
  for (const auto& e : edges) {
    if (e.father >= inscriptions.size() || e.son >= inscriptions.size()) {
      throw Error(ErrorCode::InvalidConfiguration, "generational edge refers past the inscriptions");
    }
    if (e.father == e.son) {
      throw Error(ErrorCode::InvalidConfiguration, "generational edge from an inscription to itself");
    }
    if (inscriptions[e.father].gender != Gender::male ||
        inscriptions[e.son].gender != Gender::male) {
      throw Error(ErrorCode::InvalidConfiguration, "generational edges join male inscriptions");
    }
    if (!sons.insert(e.son).second) {
      throw Error(ErrorCode::InvalidConfiguration, "inscription is a son in two edges");
    }
  }
  for (const auto& insc : inscriptions) {
    if (insc.generic.empty()) {
      throw Error(ErrorCode::InvalidConfiguration, "inscription without a generic name");
    }
  }
}

std::optional<CandidateEntry> match_candidate(const Inscription& insc, const CandidateList& list) {
  const auto generic = nfc(insc.generic);
  if (insc.rendition) {
    CandidateEntry specific{generic, nfc(*insc.rendition)};
    if (list.contains(specific)) return specific;
    if (std::find(list.excluded.begin(), list.excluded.end(), specific) != list.excluded.end()) {
      return std::nullopt;
    }
  }
  CandidateEntry broad{generic, std::nullopt};
  if (list.contains(broad)) return broad;
  return std::nullopt;
}

double entry_frequency(const CandidateEntry& entry, Gender gender, const Lexicon& lexicon) {
  const double g = lexicon.generic_frequency(gender, entry.generic);
  if (!entry.rendition) return g;
  return g * lexicon.rendition_frequency(gender, entry.generic, *entry.rendition);
}

double rr_value(const Inscription& insc, const CandidateList& list, const Lexicon& lexicon) {
  if (insc.discarded) {
    throw Error(ErrorCode::InvalidArgument, "rr_value of a discarded inscription");
  }
  if (insc.gender != list.gender) {
    throw Error(ErrorCode::InvalidArgument, "inscription and candidate list genders differ");
  }
  auto m = match_candidate(insc, list);
  if (!m) return list.other_rr;
  return entry_frequency(*m, insc.gender, lexicon);
}

double RRBreakdown::recompute() const {
  std::vector<double> factors;
  for (const auto& s : per_slot) {
    if (!s.discarded) factors.push_back(s.rr);
  }
  std::vector<double> divisors;
  for (const auto& b : bonuses) divisors.push_back(b.rule.divisor);
  return canonical_ratio(std::move(factors), std::move(divisors));
}

RRBreakdown cluster_rr(const TombConfiguration& config, const CandidateLists& lists,
                       const Lexicon& lexicon, const BonusPolicy& bonuses) {
  config.validate();
  RRBreakdown out;
  std::vector<double> factors;
  for (std::size_t i = 0; i < config.inscriptions.size(); ++i) {
    const auto& insc = config.inscriptions[i];
    SlotFactor slot;
    slot.inscription = i;
    slot.discarded = insc.discarded;
    if (!insc.discarded) {
      const auto& list = lists.for_gender(insc.gender);
      slot.match = match_candidate(insc, list);
      slot.rr = slot.match ? entry_frequency(*slot.match, insc.gender, lexicon) : list.other_rr;
      factors.push_back(slot.rr);
    }
    out.per_slot.push_back(std::move(slot));
  }

  std::vector<double> divisors;
  for (const auto& edge : config.edges) {
    const auto& father = out.per_slot[edge.father];
    const auto& son = out.per_slot[edge.son];
    if (father.discarded || son.discarded || !father.match || !son.match) continue;
    for (const auto& rule : bonuses.rules) {
      if (bonus_applies(rule, bonuses.match, *father.match, *son.match)) {
        out.bonuses.push_back({rule, edge});
        divisors.push_back(rule.divisor);
      }
    }
  }
  out.pre_bonus_rr = canonical_ratio(factors, {});
  out.cluster_rr = canonical_ratio(std::move(factors), std::move(divisors));
  return out;
}

}  // namespace rrv
