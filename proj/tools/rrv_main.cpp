#include <CLI11.hpp>

#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "rrv/error.hpp"
#include "rrv/report.hpp"

namespace fs = std::filesystem;

namespace {

struct Common {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::size_t workers = 1;
  std::string format = "table";
  std::string out;
};

void add_common(CLI::App* sub, Common& c, bool needs_config = true) {
  auto* opt = sub->add_option("--config", c.config, "analysis document (JSON)");
  if (needs_config) opt->required();
  sub->add_option("--seed", c.seed, "seed for every stochastic step");
  sub->add_option("--workers", c.workers, "worker threads")->check(CLI::PositiveNumber);
  sub->add_option("--format", c.format, "stdout rendering")
      ->check(CLI::IsMember({"table", "json", "csv"}));
  sub->add_option("--out", c.out, "directory for <command>.json and <command>.csv");
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw rrv::Error(rrv::ErrorCode::InvalidArgument, "cannot write '" + path.string() + "'");
  f << content;
}

void emit(const std::string& command, const rrv::Report& r, const Common& c) {
  const std::string json = r.json.dump(2) + "\n";
  if (c.format == "json") {
    std::cout << json;
  } else if (c.format == "csv") {
    std::cout << r.csv;
  } else {
    std::cout << r.table;
  }
  if (!c.out.empty()) {
    fs::create_directories(c.out);
    write_file(fs::path(c.out) / (command + ".json"), json);
    write_file(fs::path(c.out) / (command + ".csv"), r.csv);
  }
}

rrv::TailMethod parse_method(const std::string& s) {
  if (s == "exact") return rrv::TailMethod::exact;
  if (s == "mc" || s == "monte_carlo") return rrv::TailMethod::monte_carlo;
  throw rrv::Error(rrv::ErrorCode::InvalidArgument, "unknown method '" + s + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"RR-value analysis of name clusters"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(rrv::kToolVersion));

  Common ingest_c, rr_c, tail_c, post_c, sens_c, sim_c;
  std::string lexicon_path;
  auto* ingest = app.add_subcommand("ingest", "validate a lexicon CSV");
  ingest->add_option("lexicon", lexicon_path, "lexicon CSV (default: the config's lexicon)");
  add_common(ingest, ingest_c, false);

  auto* rr = app.add_subcommand("rr", "per-slot and cluster RR");
  add_common(rr, rr_c);

  std::vector<std::string> methods;
  std::optional<std::uint64_t> mc_samples;
  std::optional<double> threshold;
  auto* tail = app.add_subcommand("tail", "null tail area of the cluster RR");
  add_common(tail, tail_c);
  tail->add_option("--method", methods, "exact and/or mc (repeatable)");
  tail->add_option("--mc-samples", mc_samples, "Monte Carlo sample count");
  tail->add_option("--threshold", threshold, "RR threshold (default: observed)");

  auto* post = app.add_subcommand("posterior", "multiplicity-adjusted posteriors");
  add_common(post, post_c);

  auto* sens = app.add_subcommand("sensitivity", "effect of changed provisos");
  add_common(sens, sens_c);

  std::optional<std::uint64_t> n_tombs;
  auto* sim = app.add_subcommand("simulate", "calibration under simulated worlds");
  add_common(sim, sim_c);
  sim->add_option("--tombs", n_tombs, "tombs per world");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (ingest->parsed()) {
      std::string path = lexicon_path;
      if (path.empty()) {
        if (ingest_c.config.empty()) {
          throw rrv::Error(rrv::ErrorCode::InvalidArgument, "ingest needs a lexicon path or --config");
        }
        path = rrv::load_project(ingest_c.config).lexicon_path;
      }
      emit("ingest", rrv::ingest_report(path), ingest_c);
    } else if (rr->parsed()) {
      emit("rr", rrv::rr_report(rrv::load_project(rr_c.config)), rr_c);
    } else if (tail->parsed()) {
      auto pc = rrv::load_project(tail_c.config);
      rrv::TailRunOptions o;
      o.methods = pc.tail.methods;
      if (!methods.empty()) {
        o.methods.clear();
        for (const auto& m : methods) o.methods.push_back(parse_method(m));
      }
      o.seed = tail_c.seed.value_or(pc.seed);
      o.mc_samples = mc_samples.value_or(pc.tail.mc_samples);
      o.workers = tail_c.workers;
      if (threshold) pc.tail.threshold = threshold;
      emit("tail", rrv::tail_report(pc, o), tail_c);
    } else if (post->parsed()) {
      emit("posterior", rrv::posterior_report(rrv::load_project(post_c.config), post_c.workers), post_c);
    } else if (sens->parsed()) {
      emit("sensitivity", rrv::sensitivity_report(rrv::load_project(sens_c.config), sens_c.workers),
           sens_c);
    } else if (sim->parsed()) {
      const auto pc = rrv::load_project(sim_c.config);
      rrv::SimulateOptions o;
      o.seed = sim_c.seed.value_or(pc.seed);
      o.workers = sim_c.workers;
      o.n_tombs = n_tombs;
      emit("simulate", rrv::simulate_report(pc, o), sim_c);
    }
  } catch (const rrv::Error& e) {
    std::cerr << "error: " << rrv::to_string(e.code()) << ": " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
