#include "rrv/sensitivity.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>

#include "rrv/error.hpp"
#include "rrv/text.hpp"

namespace rrv {

std::string_view to_string(ModificationKind k) noexcept {
  switch (k) {
    case ModificationKind::demote_to_other: return "demote_to_other";
    case ModificationKind::add_entry: return "add_entry";
    case ModificationKind::remove_bonus: return "remove_bonus";
    case ModificationKind::undiscard: return "undiscard";
    case ModificationKind::set_other_rr: return "set_other_rr";
  }
  return "unknown";
}

Modification Modification::demote_to_other(Gender g, CandidateEntry e) {
  Modification m;
  m.kind = ModificationKind::demote_to_other;
  m.gender = g;
  m.entry = std::move(e);
  return m;
}

Modification Modification::add_entry(Gender g, CandidateEntry e, std::optional<double> frequency) {
  Modification m;
  m.kind = ModificationKind::add_entry;
  m.gender = g;
  m.entry = std::move(e);
  m.frequency = frequency;
  return m;
}

Modification Modification::remove_bonus(std::string father, std::string son) {
  Modification m;
  m.kind = ModificationKind::remove_bonus;
  m.father = nfc(father);
  m.son = nfc(son);
  return m;
}

Modification Modification::undiscard(std::string slot) {
  Modification m;
  m.kind = ModificationKind::undiscard;
  m.slot = std::move(slot);
  return m;
}

Modification Modification::set_other_rr(double value, std::optional<Gender> g) {
  Modification m;
  m.kind = ModificationKind::set_other_rr;
  m.value = value;
  m.gender = g;
  return m;
}

std::string Modification::label() const {
  const std::string kind_name(to_string(kind));
  switch (kind) {
    case ModificationKind::demote_to_other:
    case ModificationKind::add_entry:
      return kind_name + "(" + entry.label() + ")";
    case ModificationKind::remove_bonus:
      return kind_name + "(" + father + "->" + son + ")";
    case ModificationKind::undiscard:
      return kind_name + "(" + slot + ")";
    case ModificationKind::set_other_rr: {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%g", value);
      return kind_name + "(" + (gender ? std::string(to_string(*gender)) + "," : "") + buf + ")";
    }
  }
  return kind_name;
}

namespace {

Gender require_gender(const Modification& mod) {
  if (!mod.gender) {
    throw Error(ErrorCode::UnresolvedReference, mod.label() + " needs a gender");
  }
  return *mod.gender;
}

bool slot_matches(const std::string& slot, std::size_t index, const Inscription& insc) {
  if (!insc.ossuary.empty() && insc.ossuary == slot) return true;
  std::size_t parsed = 0;
  auto [ptr, ec] = std::from_chars(slot.data(), slot.data() + slot.size(), parsed);
  return ec == std::errc() && ptr == slot.data() + slot.size() && parsed == index;
}

}  // namespace

AnalysisConfig apply_modification(const AnalysisConfig& base, const Modification& mod) {
  AnalysisConfig out = base;
  switch (mod.kind) {
    case ModificationKind::demote_to_other: {
      auto& list = out.lists.for_gender(require_gender(mod));
      auto it = std::find(list.entries.begin(), list.entries.end(), mod.entry);
      if (it == list.entries.end()) {
        throw Error(ErrorCode::UnresolvedReference, mod.label() + ": entry is not listed");
      }
      list.entries.erase(it);
      list.excluded.push_back(mod.entry);
      break;
    }
    case ModificationKind::add_entry: {
      const Gender g = require_gender(mod);
      auto& list = out.lists.for_gender(g);
      if (list.contains(mod.entry)) {
        throw Error(ErrorCode::UnresolvedReference, mod.label() + ": entry is already listed");
      }
      std::erase(list.excluded, mod.entry);
      if (mod.frequency) {
        if (mod.entry.is_rendition()) {
          throw Error(ErrorCode::UnresolvedReference,
                      mod.label() + ": rendition frequencies come from the lexicon");
        }
        out.lexicon = out.lexicon.with_supplement({g, mod.entry.generic, *mod.frequency, mod.label()});
      }
      entry_frequency(mod.entry, g, out.lexicon);  // lexicon must cover the new entry
      list.entries.push_back(mod.entry);
      break;
    }
    case ModificationKind::remove_bonus: {
      auto& rules = out.bonuses.rules;
      auto it = std::find_if(rules.begin(), rules.end(), [&](const BonusRule& r) {
        return r.father_generic == mod.father && r.son_generic == mod.son;
      });
      if (it == rules.end()) {
        throw Error(ErrorCode::UnresolvedReference, mod.label() + ": no such bonus rule");
      }
      rules.erase(it);
      break;
    }
    case ModificationKind::undiscard: {
      bool changed = false;
      auto& inscriptions = out.configuration.inscriptions;
      for (std::size_t i = 0; i < inscriptions.size(); ++i) {
        if (inscriptions[i].discarded && slot_matches(mod.slot, i, inscriptions[i])) {
          inscriptions[i].discarded = false;
          changed = true;
        }
      }
      if (!changed) {
        throw Error(ErrorCode::UnresolvedReference, mod.label() + ": no discarded inscription there");
      }
      break;
    }
    case ModificationKind::set_other_rr: {
      if (!(mod.value > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, mod.label() + ": other_rr must be positive");
      }
      if (!mod.gender || *mod.gender == Gender::male) out.lists.male.other_rr = mod.value;
      if (!mod.gender || *mod.gender == Gender::female) out.lists.female.other_rr = mod.value;
      break;
    }
  }
  return out;
}

AnalysisConfig apply_modifications(const AnalysisConfig& base,
                                   const std::vector<Modification>& mods) {
  AnalysisConfig out = base;
  for (const auto& m : mods) out = apply_modification(out, m);
  return out;
}

namespace {

SensitivitySide side_of(const AnalysisResult& r) {
  SensitivitySide s;
  s.cluster_rr = r.breakdown.cluster_rr;
  s.pre_bonus_rr = r.breakdown.pre_bonus_rr;
  s.threshold = r.tail.threshold;
  s.alpha = r.tail.alpha;
  s.n_trials = r.n_trials;
  s.q = r.q;
  s.posteriors = r.posteriors;
  return s;
}

std::string fmt(const char* format, double a, double b = 0.0, double c = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, format, a, b, c);
  return buf;
}

std::string slot_name(const Inscription& insc) {
  std::string s = insc.ossuary.empty() ? std::string() : insc.ossuary + " ";
  return s + (insc.rendition ? *insc.rendition : insc.generic);
}

std::string factor_label(const SlotFactor& f) {
  if (f.discarded) return "discarded";
  return (f.match ? f.match->label() : std::string("Other")) + fmt(" %.4g", f.rr);
}

}  // namespace

SensitivityReport compare(const AnalysisConfig& base, const AnalysisConfig& modified,
                          const CompareOptions& options, std::string label) {
  const auto base_result = analyze(base, options.thetas, std::nullopt, options.workers);
  const std::optional<double> shared =
      options.threshold == ThresholdMode::shared
          ? std::optional<double>(base_result.breakdown.cluster_rr)
          : std::nullopt;
  const auto mod_result = analyze(modified, options.thetas, shared, options.workers);

  SensitivityReport report;
  report.label = std::move(label);
  report.base = side_of(base_result);
  report.modified = side_of(mod_result);
  report.rr_ratio = report.modified.cluster_rr / report.base.cluster_rr;
  report.alpha_ratio = report.modified.alpha / report.base.alpha;

  const auto& bi = base.configuration.inscriptions;
  const auto& mi = modified.configuration.inscriptions;
  for (std::size_t i = 0; i < std::min(bi.size(), mi.size()); ++i) {
    const auto b = factor_label(base_result.breakdown.per_slot[i]);
    const auto m = factor_label(mod_result.breakdown.per_slot[i]);
    if (b != m) report.narrative.push_back(slot_name(bi[i]) + ": " + b + " -> " + m);
  }
  if (base_result.breakdown.bonuses.size() != mod_result.breakdown.bonuses.size()) {
    report.narrative.push_back(fmt("bonus divisors applied: %.0f -> %.0f",
                                   static_cast<double>(base_result.breakdown.bonuses.size()),
                                   static_cast<double>(mod_result.breakdown.bonuses.size())));
  }
  report.narrative.push_back(fmt("cluster RR %.4g -> %.4g (x%.4g)", report.base.cluster_rr,
                                 report.modified.cluster_rr, report.rr_ratio));
  report.narrative.push_back(fmt("tail alpha %.4g -> %.4g (x%.4g)", report.base.alpha,
                                 report.modified.alpha, report.alpha_ratio));
  report.narrative.push_back(fmt("multiplicity bound q %.4g -> %.4g", report.base.q,
                                 report.modified.q));
  return report;
}

std::vector<SweepRow> sweep(const std::vector<double>& thetas,
                            const std::vector<AlphaVariant>& alphas, std::uint64_t n_trials,
                            MultiplicityMethod method) {
  if (thetas.empty() || alphas.empty()) {
    throw Error(ErrorCode::InvalidArgument, "sweep grids must be nonempty");
  }
  std::vector<SweepRow> rows;
  rows.reserve(thetas.size() * alphas.size());
  for (const auto& a : alphas) {
    const double q = multiplicity_bound(a.alpha, n_trials, method);
    for (double theta : thetas) {
      rows.push_back({a.label, a.alpha, theta, q, theta + q > 0.0 ? posterior(theta, q) : 0.0});
    }
  }
  return rows;
}

}  // namespace rrv
