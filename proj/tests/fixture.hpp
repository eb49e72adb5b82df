#pragma once

#include <string>
#include <vector>

#include "rrv/analysis.hpp"
#include "rrv/config.hpp"
#include "rrv/lexicon.hpp"
#include "rrv/onomasticon.hpp"
#include "rrv/rr_engine.hpp"

namespace fx {

inline std::string data_path(const std::string& name) { return std::string(RRV_DATA_DIR) + "/" + name; }

// Counts typed in directly, so tests do not depend on the CSV loader.
inline rrv::Onomasticon counts() {
  using rrv::Gender;
  using rrv::Source;
  std::vector<rrv::NameRecord> recs{
      {Gender::female, "Mariam", std::nullopt, Source::all_sources, 74},
      {Gender::female, "Mariam", "Mariamene", Source::ossuary, 1},
      {Gender::female, "Mariam", "Marya", Source::ossuary, 13},
      {Gender::male, "Yehuda", std::nullopt, Source::all_sources, 171},
      {Gender::male, "Yeshua", std::nullopt, Source::all_sources, 101},
      {Gender::male, "Matya", std::nullopt, Source::all_sources, 62},
      {Gender::male, "Yoseph", std::nullopt, Source::all_sources, 221},
      {Gender::male, "Yoseph", "Yoseh", Source::ossuary, 7},
  };
  return rrv::Onomasticon(recs, {{{Gender::male, Source::all_sources}, 2509}, {{Gender::female, Source::all_sources}, 317}},
                          {{{Gender::male, "Yoseph"}, 46}, {{Gender::female, "Mariam"}, 44}});
}

inline rrv::Lexicon lexicon(double f_james = 0.018, double f_salome = 0.183, std::int64_t scale = 1) {
  std::vector<rrv::SupplementalFrequency> sup;
  if (f_james > 0) sup.push_back({rrv::Gender::male, "James", f_james, "assumed"});
  if (f_salome > 0) sup.push_back({rrv::Gender::female, "Salome", f_salome, "assumed"});
  auto onom = counts();
  if (scale != 1) onom = onom.scaled(scale);
  return rrv::Lexicon(onom, sup);
}

inline rrv::CandidateLists lists(bool with_james = true, bool with_salome = true) {
  using rrv::generic_entry;
  using rrv::rendition_entry;
  rrv::CandidateLists l;
  l.male.entries = {generic_entry("Yoseph"), generic_entry("Yeshua"), rendition_entry("Yoseph", "Yoseh")};
  if (with_james) l.male.entries.push_back(generic_entry("James"));
  l.female.entries = {rendition_entry("Mariam", "Mariamene"), rendition_entry("Mariam", "Marya"),
                      generic_entry("Mariam")};
  if (with_salome) l.female.entries.push_back(generic_entry("Salome"));
  return l;
}

inline rrv::BonusPolicy bonuses() { return {{{"Yoseph", "Yeshua", 1.2}}, rrv::BonusMatch::generic}; }

inline rrv::Inscription male(std::string g, std::string ossuary = "", std::optional<std::string> r = {}) {
  return {rrv::Gender::male, std::move(g), std::move(r), false, std::move(ossuary)};
}
inline rrv::Inscription female(std::string g, std::string ossuary = "", std::optional<std::string> r = {}) {
  return {rrv::Gender::female, std::move(g), std::move(r), false, std::move(ossuary)};
}

// Observed tomb: Yeshua son of Yoseph, Yoseh, Matya, Mariamene, Marya, and
// the discarded Yehuda son of Yeshua.
inline rrv::TombConfiguration tomb() {
  rrv::TombConfiguration t;
  t.inscriptions = {female("Mariam", "#1", "Mariamene"),
                    male("Yeshua", "#4"),
                    male("Yoseph", "#4"),
                    male("Yoseph", "#5", "Yoseh"),
                    male("Matya", "#3"),
                    female("Mariam", "#6", "Marya"),
                    male("Yehuda", "#2"),
                    male("Yeshua", "#2")};
  t.inscriptions[6].discarded = true;
  t.inscriptions[7].discarded = true;
  t.edges = {{2, 1}, {7, 6}};
  return t;
}

inline rrv::AnalysisConfig analysis(rrv::ValidityFilter filter = rrv::ValidityFilter::distinct_candidates()) {
  rrv::AnalysisConfig a;
  a.lexicon = lexicon();
  a.lists = lists();
  a.bonuses = bonuses();
  a.configuration = tomb();
  a.filter = std::move(filter);
  return a;
}

inline rrv::ProjectConfig shipped() { return rrv::load_project(data_path("talpiot.json")); }

}  // namespace fx
