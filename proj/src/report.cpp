#include "rrv/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "rrv/error.hpp"
#include "rrv/numeric.hpp"

namespace rrv {

using ojson = nlohmann::ordered_json;

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

ojson RunManifest::to_json() const {
  ojson j;
  j["tool"] = "rrv";
  j["version"] = kToolVersion;
  j["command"] = command;
  j["config"] = config_path;
  j["config_hash"] = hex64(config_hash);
  j["lexicon_hash"] = hex64(lexicon_hash);
  j["seed"] = seed ? ojson(*seed) : ojson(nullptr);
  j["parameters"] = parameters;
  return j;
}

RunManifest manifest_for(const std::string& command, const ProjectConfig& pc) {
  RunManifest m;
  m.command = command;
  m.config_path = pc.path;
  m.config_hash = pc.config_hash;
  m.lexicon_hash = pc.lexicon_hash;
  return m;
}

namespace {

std::string num(double v, const char* format = "%.6g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, v);
  return buf;
}

// Round-trip representation for CSV cells.
std::string exact(double v) { return num(v, "%.17g"); }

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string csv_row(const std::vector<std::string>& cells) {
  std::string line;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) line += ',';
    line += csv_cell(cells[i]);
  }
  return line + "\n";
}

std::string manifest_comment(const RunManifest& m) { return "# manifest: " + m.to_json().dump() + "\n"; }

std::string filter_description(const ValidityFilter& f) { return f.describe(); }

std::string lists_hash(const ProjectConfig& pc) {
  const auto dump = lists_json(pc.analysis.lists, pc.analysis.bonuses).dump();
  return hex64(fnv1a(dump));
}

std::string inscription_name(const Inscription& insc) {
  return insc.rendition ? *insc.rendition : insc.generic;
}

ojson tail_json(const TailResult& r) {
  ojson j;
  j["method"] = to_string(r.method);
  j["threshold"] = r.threshold;
  j["alpha"] = r.alpha;
  j["accepted_fraction"] = r.accepted_fraction;
  if (r.method == TailMethod::exact) j["combinations"] = r.combinations;
  if (r.n_samples) j["n_samples"] = *r.n_samples;
  if (r.accepted_samples) j["accepted_samples"] = *r.accepted_samples;
  if (r.hits) j["hits"] = *r.hits;
  if (r.std_error) j["std_error"] = *r.std_error;
  if (r.seed) j["seed"] = *r.seed;
  return j;
}

}  // namespace

Report ingest_report(const std::string& lexicon_path) {
  std::ifstream probe(lexicon_path, std::ios::binary);
  if (!probe) throw Error(ErrorCode::InvalidArgument, "cannot open lexicon '" + lexicon_path + "'");
  std::ostringstream bytes;
  bytes << probe.rdbuf();
  const std::string content = bytes.str();
  std::istringstream in(content);
  const auto onom = load_onomasticon(in);

  RunManifest m;
  m.command = "ingest";
  m.config_path = lexicon_path;
  m.lexicon_hash = fnv1a(content);

  std::set<Gender> genders;
  for (const auto& [key, total] : onom.totals()) genders.insert(key.first);
  const auto male = onom.total(Gender::male, Source::all_sources);
  const auto female = onom.total(Gender::female, Source::all_sources);

  Report r;
  r.json["manifest"] = m.to_json();
  r.json["status"] = "OK";
  r.json["genders"] = genders.size();
  r.json["records"] = onom.records().size();
  ojson totals = ojson::array();
  for (const auto& [key, total] : onom.totals()) {
    totals.push_back({{"gender", to_string(key.first)}, {"source", to_string(key.second)}, {"total", total}});
  }
  r.json["totals"] = totals;
  ojson denoms = ojson::array();
  for (const auto& [key, d] : onom.rendition_denominators()) {
    denoms.push_back({{"gender", to_string(key.first)}, {"generic", key.second}, {"denominator", d}});
  }
  r.json["rendition_denominators"] = denoms;

  r.table = "OK: " + std::to_string(genders.size()) + " genders, " +
            (male ? std::to_string(*male) : std::string("-")) + "/" +
            (female ? std::to_string(*female) : std::string("-")) + " totals\n";
  r.csv = manifest_comment(m) + csv_row({"gender", "source", "total"});
  for (const auto& [key, total] : onom.totals()) {
    r.csv += csv_row({std::string(to_string(key.first)), std::string(to_string(key.second)),
                      std::to_string(total)});
  }
  return r;
}

Report rr_report(const ProjectConfig& pc) {
  const auto& a = pc.analysis;
  const auto breakdown = cluster_rr(a.configuration, a.lists, a.lexicon, a.bonuses);

  auto m = manifest_for("rr", pc);
  m.parameters["lists"] = lists_json(a.lists, a.bonuses);

  Report r;
  r.json["manifest"] = m.to_json();
  ojson slots = ojson::array();
  r.csv = manifest_comment(m) +
          csv_row({"slot", "ossuary", "gender", "name", "generic", "match", "generic_frequency",
                   "rendition_frequency", "rr"});
  std::ostringstream table;
  table << "slot  ossuary  gender  name         match               gen.freq  rend.freq  RR\n";
  for (const auto& s : breakdown.per_slot) {
    const auto& insc = a.configuration.inscriptions[s.inscription];
    ojson j;
    j["slot"] = s.inscription;
    j["ossuary"] = insc.ossuary;
    j["gender"] = to_string(insc.gender);
    j["name"] = inscription_name(insc);
    j["generic"] = insc.generic;
    std::string match = "Other";
    std::string gfreq, rfreq, rr;
    if (s.discarded) {
      match = "Discarded";
      rr = "Discarded";
      j["match"] = "Discarded";
      j["rr"] = nullptr;
    } else {
      if (s.match) {
        match = s.match->label();
        const double gf = a.lexicon.generic_frequency(insc.gender, s.match->generic);
        j["generic_frequency"] = gf;
        gfreq = num(gf, "%.3f");
        if (s.match->rendition) {
          const double rf =
              a.lexicon.rendition_frequency(insc.gender, s.match->generic, *s.match->rendition);
          j["rendition_frequency"] = rf;
          rfreq = num(rf, "%.3f");
        }
      }
      j["match"] = match;
      j["rr"] = s.rr;
      rr = s.rr == 1.0 ? "1" : num(s.rr, "%.4f");
    }
    slots.push_back(j);
    r.csv += csv_row({std::to_string(s.inscription), insc.ossuary, std::string(to_string(insc.gender)),
                      inscription_name(insc), insc.generic, match,
                      j.contains("generic_frequency") ? exact(j["generic_frequency"].get<double>()) : "",
                      j.contains("rendition_frequency") ? exact(j["rendition_frequency"].get<double>()) : "",
                      s.discarded ? "Discarded" : exact(s.rr)});
    char line[200];
    std::snprintf(line, sizeof line, "%-5zu %-8s %-7s %-12s %-19s %-9s %-10s %s\n", s.inscription,
                  insc.ossuary.c_str(), std::string(to_string(insc.gender)).c_str(),
                  inscription_name(insc).c_str(), match.c_str(), gfreq.c_str(), rfreq.c_str(),
                  rr.c_str());
    table << line;
  }
  r.json["slots"] = slots;
  ojson bonuses = ojson::array();
  for (const auto& b : breakdown.bonuses) {
    bonuses.push_back({{"father_slot", b.edge.father},
                       {"son_slot", b.edge.son},
                       {"rule", b.rule.father_generic + "->" + b.rule.son_generic},
                       {"divisor", b.rule.divisor}});
    table << "bonus " << b.rule.father_generic << " -> " << b.rule.son_generic << ": divided by "
          << num(b.rule.divisor, "%g") << "\n";
  }
  r.json["bonuses"] = bonuses;
  r.json["pre_bonus_rr"] = breakdown.pre_bonus_rr;
  r.json["cluster_rr"] = breakdown.cluster_rr;
  table << "cluster RR before bonus: " << num(breakdown.pre_bonus_rr, "%.4g") << "\n";
  table << "cluster RR:              " << num(breakdown.cluster_rr, "%.4g") << "\n";
  r.csv += csv_row({"pre_bonus", "", "", "", "", "", "", "", exact(breakdown.pre_bonus_rr)});
  r.csv += csv_row({"cluster", "", "", "", "", "", "", "", exact(breakdown.cluster_rr)});
  r.table = table.str();
  return r;
}

Report tail_report(const ProjectConfig& pc, const TailRunOptions& options) {
  const auto& a = pc.analysis;
  const auto breakdown = cluster_rr(a.configuration, a.lists, a.lexicon, a.bonuses);
  const double threshold = pc.tail.threshold.value_or(breakdown.cluster_rr);
  const auto model = null_model(a);
  const auto shape = model.shape();

  auto m = manifest_for("tail", pc);
  bool uses_mc = false;
  ojson methods = ojson::array();
  for (auto t : options.methods) {
    methods.push_back(to_string(t));
    uses_mc = uses_mc || t == TailMethod::monte_carlo;
  }
  if (uses_mc) m.seed = options.seed;
  m.parameters["methods"] = methods;
  m.parameters["threshold"] = threshold;
  m.parameters["threshold_source"] = pc.tail.threshold ? "configured" : "observed cluster RR";
  if (uses_mc) m.parameters["mc_samples"] = options.mc_samples;
  m.parameters["enumeration_budget"] = a.enumeration_budget;
  m.parameters["validity_filter"] = filter_description(a.filter);
  m.parameters["lists_hash"] = lists_hash(pc);
  m.parameters["shape"] = {{"male_slots", shape.male_slots}, {"female_slots", shape.female_slots},
                           {"edges", shape.edges.size()}};

  Report r;
  r.json["manifest"] = m.to_json();
  r.json["assumptions"] = pc.assumptions;
  ojson supplements = ojson::array();
  for (const auto& s : a.lexicon.supplements()) {
    supplements.push_back({{"gender", to_string(s.gender)}, {"generic", s.generic},
                           {"frequency", s.frequency}, {"note", s.note}});
  }
  r.json["supplemental_frequencies"] = supplements;

  std::ostringstream table;
  table << "assumptions:\n";
  for (const auto& s : pc.assumptions) table << "  - " << s << "\n";
  for (const auto& s : a.lexicon.supplements()) {
    table << "  - " << s.generic << " (" << to_string(s.gender) << ") frequency "
          << num(s.frequency, "%g") << (s.note.empty() ? "" : " [" + s.note + "]") << "\n";
  }
  table << "  - validity filter: " << filter_description(a.filter) << "\n";
  table << "threshold: " << num(threshold, "%.6g") << "\n";

  r.csv = manifest_comment(m) + csv_row({"method", "threshold", "alpha", "std_error", "n_samples",
                                         "accepted_fraction", "seed"});
  std::optional<TailResult> exact_result, mc_result;
  ojson results = ojson::array();
  for (auto method : options.methods) {
    TailResult t = method == TailMethod::exact
                       ? exact_tail(model, threshold, {a.enumeration_budget, options.workers})
                       : mc_tail(model, threshold, {options.mc_samples, options.seed, options.workers});
    (method == TailMethod::exact ? exact_result : mc_result) = t;
    results.push_back(tail_json(t));
    r.csv += csv_row({std::string(to_string(t.method)), exact(t.threshold), exact(t.alpha),
                      t.std_error ? exact(*t.std_error) : "", t.n_samples ? std::to_string(*t.n_samples) : "",
                      exact(t.accepted_fraction), t.seed ? std::to_string(*t.seed) : ""});
    table << to_string(t.method) << ": alpha = " << num(t.alpha, "%.6g");
    if (t.alpha > 0) table << " (about 1/" << num(1.0 / t.alpha, "%.0f") << ")";
    if (t.std_error) table << ", std error " << num(*t.std_error, "%.3g") << ", n = " << *t.n_samples;
    table << ", beta = " << num(t.accepted_fraction, "%.4f") << "\n";
  }
  r.json["results"] = results;

  if (exact_result && mc_result) {
    const double n = static_cast<double>(*mc_result->accepted_samples);
    const double se = std::sqrt(exact_result->alpha * (1.0 - exact_result->alpha) / n);
    const double diff = std::fabs(mc_result->alpha - exact_result->alpha);
    const bool agree = diff <= 3.0 * se;
    r.json["agreement"] = {{"abs_difference", diff},
                           {"std_error_at_exact", se},
                           {"z", se > 0 ? diff / se : 0.0},
                           {"within_3_se", agree}};
    table << "agreement: |mc - exact| = " << num(diff, "%.3g") << " vs 3 se = " << num(3 * se, "%.3g")
          << (agree ? "  OK\n" : "  DISAGREE\n");
  }

  if (pc.inference.sample_count) {
    const auto& s = *pc.inference.sample_count;
    const auto count = count_samples(s.n1, s.n2, shape, s.beta);
    ojson sc{{"n1", s.n1}, {"n2", s.n2}, {"beta", s.beta}, {"raw", count.raw},
             {"valid", count.valid}};
    table << "sample count: " << s.n1 << "^" << shape.male_slots << " * " << s.n2 << "^"
          << shape.female_slots << " = " << num(count.raw_approx, "%.4g") << ", valid (beta "
          << num(s.beta, "%g") << ") = " << num(count.valid, "%.4g") << "\n";
    if (s.reported_valid) {
      const double ratio = count.valid / *s.reported_valid;
      sc["reported_valid"] = *s.reported_valid;
      sc["ratio_to_reported"] = ratio;
      sc["consistent_with_reported"] = std::fabs(ratio - 1.0) < 0.01;
      if (std::fabs(ratio - 1.0) >= 0.01) {
        table << "  note: the reported valid count " << num(*s.reported_valid, "%.4g")
              << " does not follow from these inputs (ratio " << num(ratio, "%.3g") << ")\n";
      }
    }
    r.json["sample_count"] = sc;
  }
  r.table = table.str();
  return r;
}

Report posterior_report(const ProjectConfig& pc, std::size_t workers) {
  const auto& a = pc.analysis;
  const auto n_trials = a.trials();
  std::vector<AlphaVariant> variants{pc.inference.alpha};
  for (const auto& v : pc.inference.alpha_variants) {
    if (v.label != pc.inference.alpha.label && v.alpha != pc.inference.alpha.alpha) {
      variants.push_back(v);
    }
  }
  const auto observed = cluster_rr(a.configuration, a.lists, a.lexicon, a.bonuses).cluster_rr;
  const auto computed = exact_tail(null_model(a), observed, {a.enumeration_budget, workers});
  variants.push_back({"exact tail under these provisos", computed.alpha});

  auto m = manifest_for("posterior", pc);
  m.parameters["n_trials"] = n_trials;
  m.parameters["population_male"] = a.population_male;
  m.parameters["population_female"] = a.population_female;
  m.parameters["method"] = to_string(a.method);
  m.parameters["thetas"] = pc.inference.thetas;
  m.parameters["validity_filter"] = filter_description(a.filter);
  m.parameters["lists_hash"] = lists_hash(pc);

  const auto rows = sweep(pc.inference.thetas, variants, n_trials, a.method);
  Report r;
  r.json["manifest"] = m.to_json();
  r.json["posterior_formula"] = "theta / (theta + q) (reconstructed)";
  r.json["n_trials"] = n_trials;
  ojson out = ojson::array();
  r.csv = manifest_comment(m) + csv_row({"alpha_label", "alpha", "n_trials", "q", "one_over_q", "theta", "posterior"});
  std::ostringstream table;
  table << "trials N = " << n_trials << " (" << to_string(a.method) << ")\n";
  table << "posterior = theta / (theta + q)  [reconstructed closed form]\n";
  table << "alpha                              q            1/q       theta  posterior\n";
  for (const auto& row : rows) {
    out.push_back({{"alpha_label", row.alpha_label}, {"alpha", row.alpha}, {"q", row.q},
                   {"theta", row.theta}, {"posterior", row.posterior}});
    r.csv += csv_row({row.alpha_label, exact(row.alpha), std::to_string(n_trials), exact(row.q),
                      exact(1.0 / row.q), exact(row.theta), exact(row.posterior)});
    char line[200];
    std::snprintf(line, sizeof line, "%-34s %-12.5g %-9.1f %-6g %.4f\n", row.alpha_label.c_str(),
                  row.q, 1.0 / row.q, row.theta, row.posterior);
    table << line;
  }
  r.json["rows"] = out;

  if (!pc.scenarios.empty()) {
    const auto sp = scenario_posterior(pc.scenarios, a.configuration, a.lists, a.lexicon,
                                       pc.inference.prior_pi);
    r.json["scenario_comparator"] = {{"scenarios", pc.scenarios.size()},
                                     {"prior_pi", pc.inference.prior_pi},
                                     {"p_data_h1", sp.p_data_h1},
                                     {"p_data_h0", sp.p_data_h0},
                                     {"posterior", sp.posterior}};
    table << "scenario comparator (" << pc.scenarios.size() << " equally likely scenarios, pi = "
          << num(pc.inference.prior_pi, "%g") << "): posterior " << num(sp.posterior, "%.4f") << "\n";
  }
  r.table = table.str();
  return r;
}

Report sensitivity_report(const ProjectConfig& pc, std::size_t workers) {
  const auto& base = pc.analysis;
  const auto& s = pc.sensitivity;
  CompareOptions options{s.threshold, s.thetas, workers};

  auto m = manifest_for("sensitivity", pc);
  m.parameters["threshold_mode"] = s.threshold == ThresholdMode::own ? "own" : "shared";
  m.parameters["thetas"] = s.thetas;
  ojson mods = ojson::array();
  for (const auto& mod : s.modifications) mods.push_back(mod.label());
  m.parameters["modifications"] = mods;
  m.parameters["validity_filter"] = filter_description(base.filter);
  m.parameters["lists_hash"] = lists_hash(pc);

  Report r;
  r.json["manifest"] = m.to_json();
  std::vector<std::string> header{"modification", "base_rr", "modified_rr", "rr_ratio",
                                  "base_alpha", "modified_alpha", "alpha_ratio", "base_q", "modified_q"};
  for (double t : s.thetas) {
    header.push_back("base_posterior_theta_" + num(t, "%g"));
    header.push_back("modified_posterior_theta_" + num(t, "%g"));
  }
  r.csv = manifest_comment(m) + csv_row(header);
  std::ostringstream table;
  ojson reports = ojson::array();
  for (const auto& mod : s.modifications) {
    const auto modified = apply_modification(base, mod);
    const auto rep = compare(base, modified, options, mod.label());
    ojson j;
    j["modification"] = rep.label;
    j["rr_ratio"] = rep.rr_ratio;
    j["alpha_ratio"] = rep.alpha_ratio;
    auto side = [](const SensitivitySide& x) {
      ojson o{{"cluster_rr", x.cluster_rr}, {"pre_bonus_rr", x.pre_bonus_rr}, {"threshold", x.threshold},
              {"alpha", x.alpha}, {"n_trials", x.n_trials}, {"q", x.q}};
      ojson ps = ojson::array();
      for (const auto& p : x.posteriors) ps.push_back({{"theta", p.theta}, {"posterior", p.posterior}});
      o["posteriors"] = ps;
      return o;
    };
    j["base"] = side(rep.base);
    j["modified"] = side(rep.modified);
    j["narrative"] = rep.narrative;
    reports.push_back(j);

    std::vector<std::string> row{rep.label, exact(rep.base.cluster_rr), exact(rep.modified.cluster_rr),
                                 exact(rep.rr_ratio), exact(rep.base.alpha), exact(rep.modified.alpha),
                                 exact(rep.alpha_ratio), exact(rep.base.q), exact(rep.modified.q)};
    for (std::size_t i = 0; i < s.thetas.size(); ++i) {
      row.push_back(exact(rep.base.posteriors[i].posterior));
      row.push_back(exact(rep.modified.posteriors[i].posterior));
    }
    r.csv += csv_row(row);
    table << rep.label << ": RR ratio " << num(rep.rr_ratio, "%.4g") << ", alpha ratio "
          << num(rep.alpha_ratio, "%.4g") << "\n";
    for (const auto& n : rep.narrative) table << "    " << n << "\n";
  }
  r.json["reports"] = reports;

  std::vector<AlphaVariant> variants{pc.inference.alpha};
  for (const auto& v : pc.inference.alpha_variants) {
    if (v.label != pc.inference.alpha.label && v.alpha != pc.inference.alpha.alpha) variants.push_back(v);
  }
  const auto rows = sweep(s.thetas, variants, base.trials(), base.method);
  ojson sw = ojson::array();
  table << "posterior sweep:\n";
  for (const auto& row : rows) {
    sw.push_back({{"alpha_label", row.alpha_label}, {"alpha", row.alpha}, {"theta", row.theta},
                  {"q", row.q}, {"posterior", row.posterior}});
    table << "  " << row.alpha_label << "  theta " << num(row.theta, "%g") << "  posterior "
          << num(row.posterior, "%.4f") << "\n";
  }
  r.json["sweep"] = sw;
  r.table = table.str();
  return r;
}

Report simulate_report(const ProjectConfig& pc, const SimulateOptions& options) {
  const auto& a = pc.analysis;
  const auto& sim = pc.simulation;
  if (sim.worlds.empty()) throw Error(ErrorCode::InvalidConfiguration, "simulation has no worlds");

  auto m = manifest_for("simulate", pc);
  m.seed = options.seed;
  m.parameters["alpha_grid"] = sim.alpha_grid;
  m.parameters["validity_filter"] = filter_description(a.filter);
  m.parameters["lists_hash"] = lists_hash(pc);
  ojson worlds_param = ojson::array();

  Report r;
  std::ostringstream table;
  ojson worlds = ojson::array();
  std::optional<WorldRun> h0, h1;
  std::optional<NullModel> h0_model;
  std::optional<RRDistribution> h0_null;
  for (std::size_t w = 0; w < sim.worlds.size(); ++w) {
    auto spec = sim.worlds[w].spec;
    spec.seed = mix_seed(options.seed, w);
    if (options.n_tombs) spec.n_tombs = *options.n_tombs;
    const auto model = NullModel::build(spec.shape, a.lists, a.lexicon, a.bonuses, a.filter);
    const auto null = rr_distribution(model, {a.enumeration_budget, options.workers});
    auto run = simulate_worlds(spec, model, null, a.lists, a.lexicon, options.workers);
    worlds_param.push_back({{"name", sim.worlds[w].name}, {"mode", to_string(spec.mode)},
                            {"n_tombs", spec.n_tombs}, {"seed", spec.seed}});

    std::vector<double> sorted_alpha = run.alpha;
    std::sort(sorted_alpha.begin(), sorted_alpha.end());
    CompensatedSum mean_log_rr;
    for (double v : run.rr) mean_log_rr += std::log10(v);
    worlds.push_back({{"name", sim.worlds[w].name},
                      {"mode", to_string(spec.mode)},
                      {"n_tombs", spec.n_tombs},
                      {"min_rr", *std::min_element(run.rr.begin(), run.rr.end())},
                      {"mean_log10_rr", mean_log_rr.value() / static_cast<double>(run.size())},
                      {"median_alpha", sorted_alpha[sorted_alpha.size() / 2]}});
    table << "world " << sim.worlds[w].name << " (" << to_string(spec.mode) << "): " << spec.n_tombs
          << " tombs, median alpha " << num(sorted_alpha[sorted_alpha.size() / 2], "%.4g") << "\n";
    if (spec.mode == WorldMode::h0_random && !h0) {
      h0 = std::move(run);
      h0_model.emplace(model);
      h0_null.emplace(null);
    } else if (spec.mode == WorldMode::h1_planted && !h1) {
      h1 = std::move(run);
    }
  }
  m.parameters["worlds"] = worlds_param;
  r.json["manifest"] = m.to_json();
  r.json["worlds"] = worlds;

  r.csv = manifest_comment(m) + csv_row({"threshold", "exact_fpr", "h0_tombs", "h0_flagged", "fpr",
                                         "fpr_se", "h1_tombs", "h1_flagged", "detection", "detection_se"});
  if (h0 && h1) {
    auto oc = operating_characteristics(*h0, *h1, sim.alpha_grid);
    if (!pc.scenarios.empty() && sim.scenario_tombs > 0) {
      const auto h1_model = NullModel::build(h1->spec.shape, a.lists, a.lexicon, a.bonuses, a.filter);
      oc.h0_scenario = scenario_comparison(*h0, *h0_model, pc.scenarios, a.lists, a.lexicon,
                                           pc.inference.prior_pi, sim.scenario_tombs, options.workers);
      oc.h1_scenario = scenario_comparison(*h1, h1_model, pc.scenarios, a.lists, a.lexicon,
                                           pc.inference.prior_pi, sim.scenario_tombs, options.workers);
    }
    ojson points = ojson::array();
    table << "threshold   exact FPR    FPR          detection\n";
    for (const auto& p : oc.points) {
      const double exact_fpr = h0_null->probability_alpha_at_most(p.threshold);
      points.push_back({{"threshold", p.threshold}, {"exact_fpr", exact_fpr},
                        {"h0_tombs", p.h0_tombs}, {"h0_flagged", p.h0_flagged},
                        {"fpr", p.false_positive_rate}, {"fpr_se", p.false_positive_se},
                        {"h1_tombs", p.h1_tombs}, {"h1_flagged", p.h1_flagged},
                        {"detection", p.detection_rate}, {"detection_se", p.detection_se}});
      r.csv += csv_row({exact(p.threshold), exact(exact_fpr), std::to_string(p.h0_tombs),
                        std::to_string(p.h0_flagged), exact(p.false_positive_rate),
                        exact(p.false_positive_se), std::to_string(p.h1_tombs),
                        std::to_string(p.h1_flagged), exact(p.detection_rate), exact(p.detection_se)});
      char line[160];
      std::snprintf(line, sizeof line, "%-11.3g %-12.4g %-12.4g %.4g\n", p.threshold, exact_fpr,
                    p.false_positive_rate, p.detection_rate);
      table << line;
    }
    r.json["operating_characteristics"] = points;
    if (oc.h0_scenario) {
      auto sc = [](const ScenarioComparison& c) {
        return ojson{{"tombs", c.tombs}, {"mean_posterior", c.mean_posterior},
                     {"flagged_rate", c.flagged_rate}};
      };
      r.json["scenario_comparator"] = {{"h0", sc(*oc.h0_scenario)}, {"h1", sc(*oc.h1_scenario)}};
      table << "scenario comparator (posterior > 0.5): h0 " << num(oc.h0_scenario->flagged_rate, "%.4g")
            << ", h1 " << num(oc.h1_scenario->flagged_rate, "%.4g") << "\n";
    }
  }
  r.table = table.str();
  return r;
}

}  // namespace rrv
