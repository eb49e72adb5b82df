#pragma once

#include <map>
#include <random>
#include <string>
#include <vector>

#include "rrv/lexicon.hpp"
#include "rrv/rr_engine.hpp"

namespace gen {

using namespace rrv;

struct World {
  Lexicon lexicon;
  CandidateLists lists;
  BonusPolicy bonuses;
};

inline std::string nm(char g, int i) { return std::string(1, g) + std::to_string(i); }

// Random lexicon with renditions on the first name of each gender, random
// lists drawn from it and one bonus rule.
inline World random_world(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> count(1, 60);
  std::vector<NameRecord> recs;
  std::map<std::pair<Gender, Source>, std::int64_t> totals;
  std::map<std::pair<Gender, std::string>, std::int64_t> denoms;
  World w;
  for (auto g : {Gender::male, Gender::female}) {
    const char c = g == Gender::male ? 'm' : 'f';
    std::int64_t sum = 0;
    for (int i = 0; i < 6; ++i) {
      const int n = count(rng);
      recs.push_back({g, nm(c, i), std::nullopt, Source::all_sources, n});
      sum += n;
    }
    totals[{g, Source::all_sources}] = sum + count(rng);
    const int d = 20 + count(rng);
    denoms[{g, nm(c, 0)}] = d;
    recs.push_back({g, nm(c, 0), "r1", Source::ossuary, 1 + count(rng) % 9});
    recs.push_back({g, nm(c, 0), "r2", Source::ossuary, 1 + count(rng) % 9});
    auto& list = w.lists.for_gender(g);
    for (int i = 0; i < 6; ++i)
      if (rng() % 2) list.entries.push_back(generic_entry(nm(c, i)));
    if (rng() % 2) list.entries.push_back(rendition_entry(nm(c, 0), "r1"));
    if (rng() % 3 == 0) list.entries.push_back(rendition_entry(nm(c, 0), "r2"));
  }
  w.lexicon = Lexicon(Onomasticon(recs, totals, denoms));
  w.bonuses.rules = {{"m0", "m1", 1.2}};
  return w;
}

inline Inscription random_inscription(std::mt19937_64& rng, Gender g) {
  const char c = g == Gender::male ? 'm' : 'f';
  Inscription insc{g, nm(c, static_cast<int>(rng() % 8)), std::nullopt, false, {}};
  if (insc.generic == nm(c, 0) && rng() % 2) insc.rendition = rng() % 2 ? "r1" : "r2";
  return insc;
}

inline TombConfiguration random_tomb(std::mt19937_64& rng, std::size_t males, std::size_t females) {
  TombConfiguration t;
  for (std::size_t i = 0; i < males; ++i) t.inscriptions.push_back(random_inscription(rng, Gender::male));
  for (std::size_t i = 0; i < females; ++i) t.inscriptions.push_back(random_inscription(rng, Gender::female));
  if (males >= 2) t.edges = {{0, 1}};
  return t;
}

}  // namespace gen
