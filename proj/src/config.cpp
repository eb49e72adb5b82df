#include "rrv/config.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "rrv/error.hpp"
#include "rrv/numeric.hpp"
#include "rrv/text.hpp"

namespace rrv {

using nlohmann::json;

namespace {

std::string value_label(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }


[[noreturn]] void bad(const std::string& what) {
  throw Error(ErrorCode::InvalidConfiguration, what);
}

const json& require(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) bad(where + ": missing '" + key + "'");
  return j.at(key);
}

std::string get_string(const json& j, const char* key, const std::string& where) {
  const auto& v = require(j, key, where);
  if (!v.is_string()) bad(where + ": '" + key + "' must be a string");
  return v.get<std::string>();
}

template <typename T>
T get_or(const json& j, const char* key, T fallback, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    bad(where + ": '" + key + "' has the wrong type");
  }
}

std::optional<std::string> optional_name(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return nfc(j.at(key).get<std::string>());
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Gender gender_of(const json& j, const std::string& where) {
  try {
    return parse_gender(get_string(j, "gender", where));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::InvalidConfiguration) throw;
    bad(where + ": " + e.what());
  }
}

CandidateList parse_list(const json& j, Gender g) {
  const std::string where = "lists." + std::string(to_string(g));
  CandidateList list;
  list.gender = g;
  for (const auto& e : get_or<json>(j, "entries", json::array(), where)) {
    list.entries.push_back(parse_entry(e));
  }
  for (const auto& e : get_or<json>(j, "excluded", json::array(), where)) {
    list.excluded.push_back(parse_entry(e));
  }
  list.other_rr = get_or<double>(j, "other_rr", 1.0, where);
  list.validate();
  return list;
}

BonusPolicy parse_bonuses(const json& j) {
  BonusPolicy policy;
  const auto match = get_or<std::string>(j, "match", "generic", "bonuses");
  if (match == "generic") {
    policy.match = BonusMatch::generic;
  } else if (match == "generic_entry") {
    policy.match = BonusMatch::generic_entry;
  } else {
    bad("bonuses.match must be 'generic' or 'generic_entry'");
  }
  for (const auto& r : get_or<json>(j, "rules", json::array(), "bonuses")) {
    BonusRule rule;
    rule.father_generic = nfc(get_string(r, "father", "bonus rule"));
    rule.son_generic = nfc(get_string(r, "son", "bonus rule"));
    rule.divisor = get_or<double>(r, "divisor", 1.2, "bonus rule");
    if (!(rule.divisor >= 1.0)) bad("bonus divisor must be at least 1");
    policy.rules.push_back(std::move(rule));
  }
  return policy;
}

TombConfiguration parse_configuration(const json& j) {
  TombConfiguration config;
  for (const auto& i : require(j, "inscriptions", "configuration")) {
    Inscription insc;
    insc.gender = gender_of(i, "inscription");
    insc.generic = nfc(get_string(i, "generic", "inscription"));
    insc.rendition = optional_name(i, "rendition");
    insc.discarded = get_or<bool>(i, "discarded", false, "inscription");
    insc.ossuary = get_or<std::string>(i, "ossuary", "", "inscription");
    config.inscriptions.push_back(std::move(insc));
  }
  for (const auto& e : get_or<json>(j, "edges", json::array(), "configuration")) {
    config.edges.push_back({get_or<std::size_t>(e, "father", 0, "edge"),
                            get_or<std::size_t>(e, "son", 0, "edge")});
    if (!e.contains("father") || !e.contains("son")) bad("edge needs 'father' and 'son'");
  }
  config.validate();
  return config;
}

ValidityFilter parse_filter(const json& j) {
  const auto name = get_or<std::string>(j, "filter", "accept_all", "validity");
  ValidityFilter filter;
  if (name == "accept_all") {
    filter = ValidityFilter::accept_all();
  } else if (name == "distinct_candidates") {
    filter = ValidityFilter::distinct_candidates();
  } else {
    bad("unknown validity filter '" + name + "'");
  }
  const double p = get_or<double>(j, "accept_probability", 1.0, "validity");
  if (!(p > 0.0 && p <= 1.0)) bad("validity.accept_probability must lie in (0, 1]");
  return p < 1.0 ? filter.with_accept_probability(p) : filter;
}

ScenarioName parse_scenario_name(const json& j, std::optional<Gender> forced) {
  ScenarioName n;
  n.gender = forced ? *forced : gender_of(j, "scenario name");
  n.generic = nfc(get_string(j, "generic", "scenario name"));
  n.rendition = optional_name(j, "rendition");
  return n;
}

Scenario parse_scenario(const json& j) {
  Scenario s;
  s.name = get_or<std::string>(j, "name", "", "scenario");
  for (const auto& n : get_or<json>(j, "names", json::array(), "scenario")) {
    s.names.push_back(parse_scenario_name(n, std::nullopt));
  }
  for (const auto& g : get_or<json>(j, "generations", json::array(), "scenario")) {
    s.generations.push_back({parse_scenario_name(require(g, "father", "generation"), Gender::male),
                             parse_scenario_name(require(g, "son", "generation"), Gender::male)});
  }
  s.validate();
  return s;
}

AlphaVariant parse_alpha_variant(const json& j) {
  AlphaVariant v;
  v.alpha = parse_probability(require(j, "alpha", "alpha variant"));
  v.label = get_or<std::string>(j, "label", value_label(require(j, "alpha", "alpha variant")), "alpha variant");
  return v;
}

ConfigurationShape parse_shape(const json& j) {
  ConfigurationShape shape;
  shape.male_slots = get_or<std::size_t>(j, "male_slots", 0, "shape");
  shape.female_slots = get_or<std::size_t>(j, "female_slots", 0, "shape");
  for (const auto& e : get_or<json>(j, "edges", json::array(), "shape")) {
    shape.edges.push_back({get_or<std::size_t>(e, "father", 0, "shape edge"),
                           get_or<std::size_t>(e, "son", 0, "shape edge")});
  }
  shape.validate();
  return shape;
}

NamedWorld parse_world(const json& j, const ConfigurationShape& default_shape) {
  NamedWorld w;
  w.name = get_or<std::string>(j, "name", "", "world");
  const auto mode = get_or<std::string>(j, "mode", "h0_random", "world");
  if (mode == "h0_random") {
    w.spec.mode = WorldMode::h0_random;
  } else if (mode == "h1_planted") {
    w.spec.mode = WorldMode::h1_planted;
  } else {
    bad("world mode must be 'h0_random' or 'h1_planted'");
  }
  w.spec.shape = j.contains("shape") ? parse_shape(j.at("shape")) : default_shape;
  w.spec.n_tombs = get_or<std::uint64_t>(j, "n_tombs", 10000, "world");
  w.spec.rendition_sampling = get_or<bool>(j, "rendition_sampling", true, "world");
  for (const auto& p : get_or<json>(j, "plant", json::array(), "world")) {
    w.spec.plant.push_back({gender_of(p, "planted name"), nfc(get_string(p, "generic", "planted name")),
                            optional_name(p, "rendition")});
  }
  for (const auto& e : get_or<json>(j, "plant_edges", json::array(), "world")) {
    w.spec.plant_edges.push_back({get_or<std::size_t>(e, "father", 0, "plant edge"),
                                  get_or<std::size_t>(e, "son", 0, "plant edge")});
  }
  w.spec.validate();
  return w;
}

}  // namespace

double parse_probability(const json& value) {
  double p = 0.0;
  if (value.is_number()) {
    p = value.get<double>();
  } else if (value.is_string()) {
    const auto text = value.get<std::string>();
    const auto slash = text.find('/');
    try {
      if (slash == std::string::npos) {
        p = std::stod(text);
      } else {
        p = std::stod(text.substr(0, slash)) / std::stod(text.substr(slash + 1));
      }
    } catch (const std::exception&) {
      bad("cannot read probability '" + text + "'");
    }
  } else {
    bad("probability must be a number or a 'a/b' string");
  }
  if (!(p >= 0.0 && p <= 1.0)) bad("probability outside [0, 1]");
  return p;
}

CandidateEntry parse_entry(const json& j) {
  CandidateEntry e;
  e.generic = nfc(get_string(j, "generic", "candidate entry"));
  e.rendition = optional_name(j, "rendition");
  return e;
}

Modification parse_modification(const json& j) {
  const auto kind = get_string(j, "kind", "modification");
  auto gender = [&] {
    return j.contains("gender") ? std::optional<Gender>(gender_of(j, "modification"))
                                : std::nullopt;
  };
  if (kind == "demote_to_other" || kind == "add_entry") {
    const auto g = gender();
    if (!g) bad(kind + " needs a gender");
    if (kind == "demote_to_other") return Modification::demote_to_other(*g, parse_entry(j));
    std::optional<double> f;
    if (j.contains("frequency")) f = parse_probability(j.at("frequency"));
    return Modification::add_entry(*g, parse_entry(j), f);
  }
  if (kind == "remove_bonus") {
    return Modification::remove_bonus(get_string(j, "father", "modification"),
                                      get_string(j, "son", "modification"));
  }
  if (kind == "undiscard") {
    const auto& slot = require(j, "slot", "modification");
    return Modification::undiscard(slot.is_string() ? slot.get<std::string>() : slot.dump());
  }
  if (kind == "set_other_rr") {
    return Modification::set_other_rr(get_or<double>(j, "value", 1.0, "modification"), gender());
  }
  bad("unknown modification kind '" + kind + "'");
}

nlohmann::ordered_json lists_json(const CandidateLists& lists, const BonusPolicy& bonuses) {
  auto entry = [](const CandidateEntry& e) {
    nlohmann::ordered_json j{{"generic", e.generic}};
    if (e.rendition) j["rendition"] = *e.rendition;
    return j;
  };
  auto list = [&](const CandidateList& l) {
    nlohmann::ordered_json j;
    j["entries"] = nlohmann::ordered_json::array();
    for (const auto& e : l.entries) j["entries"].push_back(entry(e));
    j["excluded"] = nlohmann::ordered_json::array();
    for (const auto& e : l.excluded) j["excluded"].push_back(entry(e));
    j["other_rr"] = l.other_rr;
    return j;
  };
  nlohmann::ordered_json out;
  out["male"] = list(lists.male);
  out["female"] = list(lists.female);
  out["bonus_match"] = bonuses.match == BonusMatch::generic ? "generic" : "generic_entry";
  out["bonus_rules"] = nlohmann::ordered_json::array();
  for (const auto& r : bonuses.rules) {
    out["bonus_rules"].push_back({{"father", r.father_generic}, {"son", r.son_generic}, {"divisor", r.divisor}});
  }
  return out;
}

namespace {

ProjectConfig parse_document(const json& doc, const std::string& base_dir) {
  if (!doc.is_object()) bad("config document must be a JSON object");
  ProjectConfig pc;
  auto lexicon_path = std::filesystem::path(get_string(doc, "lexicon", "config"));
  if (lexicon_path.is_relative()) lexicon_path = std::filesystem::path(base_dir) / lexicon_path;
  pc.lexicon_path = lexicon_path.lexically_normal().string();
  const auto lexicon_bytes = read_file(pc.lexicon_path);
  pc.lexicon_hash = fnv1a(lexicon_bytes);
  std::istringstream lexicon_stream(lexicon_bytes);
  auto onom = load_onomasticon(lexicon_stream);

  std::vector<SupplementalFrequency> supplements;
  for (const auto& s : get_or<json>(doc, "supplemental_frequencies", json::array(), "config")) {
    supplements.push_back({gender_of(s, "supplemental frequency"),
                           nfc(get_string(s, "generic", "supplemental frequency")),
                           parse_probability(require(s, "frequency", "supplemental frequency")),
                           get_or<std::string>(s, "note", "", "supplemental frequency")});
  }
  auto& a = pc.analysis;
  a.lexicon = Lexicon(std::move(onom), std::move(supplements));

  const auto& lists = get_or<json>(doc, "lists", json::object(), "config");
  a.lists.male = parse_list(get_or<json>(lists, "male", json::object(), "lists"), Gender::male);
  a.lists.female = parse_list(get_or<json>(lists, "female", json::object(), "lists"), Gender::female);
  a.bonuses = parse_bonuses(get_or<json>(doc, "bonuses", json::object(), "config"));
  a.configuration = parse_configuration(require(doc, "configuration", "config"));
  a.filter = parse_filter(get_or<json>(doc, "validity", json::object(), "config"));

  for (const auto& s : get_or<json>(doc, "assumptions", json::array(), "config")) {
    pc.assumptions.push_back(s.get<std::string>());
  }
  pc.seed = get_or<std::uint64_t>(doc, "seed", 1, "config");

  const auto& tail = get_or<json>(doc, "tail", json::object(), "config");
  if (tail.contains("methods")) {
    pc.tail.methods.clear();
    for (const auto& m : tail.at("methods")) {
      const auto name = m.get<std::string>();
      if (name == "exact") {
        pc.tail.methods.push_back(TailMethod::exact);
      } else if (name == "mc" || name == "monte_carlo") {
        pc.tail.methods.push_back(TailMethod::monte_carlo);
      } else {
        bad("unknown tail method '" + name + "'");
      }
    }
  }
  pc.tail.mc_samples = get_or<std::uint64_t>(tail, "mc_samples", 1'000'000, "tail");
  a.enumeration_budget = get_or<double>(tail, "enumeration_budget", kDefaultEnumerationBudget, "tail");
  if (tail.contains("threshold")) pc.tail.threshold = get_or<double>(tail, "threshold", 1.0, "tail");

  const auto& inf = get_or<json>(doc, "inference", json::object(), "config");
  a.population_male = get_or<std::uint64_t>(inf, "population_male", 4400, "inference");
  a.population_female = get_or<std::uint64_t>(inf, "population_female", 2200, "inference");
  if (inf.contains("n_trials")) a.n_trials = get_or<std::uint64_t>(inf, "n_trials", 1, "inference");
  try {
    a.method = parse_multiplicity_method(get_or<std::string>(inf, "method", "union_bound", "inference"));
  } catch (const Error& e) {
    bad(e.what());
  }
  if (inf.contains("alpha")) {
    pc.inference.alpha = {get_or<std::string>(inf, "alpha_label", value_label(inf.at("alpha")), "inference"),
                          parse_probability(inf.at("alpha"))};
  }
  for (const auto& v : get_or<json>(inf, "alpha_variants", json::array(), "inference")) {
    pc.inference.alpha_variants.push_back(parse_alpha_variant(v));
  }
  pc.inference.thetas = get_or<std::vector<double>>(inf, "thetas", {1.0, 0.5, 0.1}, "inference");
  pc.inference.prior_pi = get_or<double>(inf, "prior_pi", 0.5, "inference");
  if (inf.contains("sample_count")) {
    const auto& sc = inf.at("sample_count");
    SampleCountSettings s;
    s.n1 = get_or<std::uint64_t>(sc, "n1", 1, "sample_count");
    s.n2 = get_or<std::uint64_t>(sc, "n2", 1, "sample_count");
    s.beta = get_or<double>(sc, "beta", 1.0, "sample_count");
    if (sc.contains("reported_valid")) s.reported_valid = get_or<double>(sc, "reported_valid", 0.0, "sample_count");
    pc.inference.sample_count = s;
  }

  for (const auto& s : get_or<json>(doc, "scenarios", json::array(), "config")) {
    pc.scenarios.push_back(parse_scenario(s));
  }

  const auto& sens = get_or<json>(doc, "sensitivity", json::object(), "config");
  const auto mode = get_or<std::string>(sens, "threshold", "own", "sensitivity");
  if (mode == "own") {
    pc.sensitivity.threshold = ThresholdMode::own;
  } else if (mode == "shared") {
    pc.sensitivity.threshold = ThresholdMode::shared;
  } else {
    bad("sensitivity.threshold must be 'own' or 'shared'");
  }
  pc.sensitivity.thetas = get_or<std::vector<double>>(sens, "thetas", pc.inference.thetas, "sensitivity");
  for (const auto& m : get_or<json>(sens, "modifications", json::array(), "sensitivity")) {
    pc.sensitivity.modifications.push_back(parse_modification(m));
  }

  const auto& sim = get_or<json>(doc, "simulation", json::object(), "config");
  pc.simulation.alpha_grid =
      get_or<std::vector<double>>(sim, "alpha_grid", pc.simulation.alpha_grid, "simulation");
  pc.simulation.scenario_tombs = get_or<std::uint64_t>(sim, "scenario_tombs", 0, "simulation");
  const auto shape = shape_of(a.configuration).shape;
  for (const auto& w : get_or<json>(sim, "worlds", json::array(), "simulation")) {
    pc.simulation.worlds.push_back(parse_world(w, shape));
  }
  return pc;
}

}  // namespace

ProjectConfig parse_project(const json& doc, const std::string& base_dir) {
  try {
    return parse_document(doc, base_dir);
  } catch (const json::exception& e) {
    bad(e.what());
  }
}

ProjectConfig load_project(const std::string& path) {
  const auto bytes = read_file(path);
  json doc;
  try {
    doc = json::parse(bytes);
  } catch (const json::parse_error& e) {
    bad(std::string("config is not valid JSON: ") + e.what());
  }
  auto pc = parse_project(doc, std::filesystem::path(path).parent_path().string());
  pc.path = path;
  pc.config_hash = fnv1a(bytes);
  return pc;
}

}  // namespace rrv
