#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rrv/analysis.hpp"
#include "rrv/calibration.hpp"
#include "rrv/inference.hpp"
#include "rrv/sensitivity.hpp"

namespace rrv {

struct TailSettings {
  std::vector<TailMethod> methods{TailMethod::exact};
  std::uint64_t mc_samples = 1'000'000;
  std::optional<double> threshold;  // default: the observed cluster RR
};

struct SampleCountSettings {
  std::uint64_t n1 = 1;
  std::uint64_t n2 = 1;
  double beta = 1.0;
  std::optional<double> reported_valid;
};

struct InferenceSettings {
  AlphaVariant alpha{"reported 1/1,821,000", 1.0 / 1'821'000.0};
  std::vector<AlphaVariant> alpha_variants;
  std::vector<double> thetas{1.0, 0.5, 0.1};
  double prior_pi = 0.5;
  std::optional<SampleCountSettings> sample_count;
};

struct SensitivitySettings {
  ThresholdMode threshold = ThresholdMode::own;
  std::vector<double> thetas{1.0, 0.5, 0.1};
  std::vector<Modification> modifications;
};

struct NamedWorld {
  std::string name;
  WorldSpec spec;  // seed is filled in at run time
};

struct SimulationSettings {
  std::vector<double> alpha_grid{1e-5, 1e-3, 1e-2, 0.05, 1.0};
  std::uint64_t scenario_tombs = 0;
  std::vector<NamedWorld> worlds;
};

// One analysis document: provisos plus per-command sections.
struct ProjectConfig {
  std::string path;
  std::string lexicon_path;
  std::uint64_t config_hash = 0;
  std::uint64_t lexicon_hash = 0;
  std::uint64_t seed = 1;
  AnalysisConfig analysis;
  std::vector<std::string> assumptions;
  TailSettings tail;
  InferenceSettings inference;
  std::vector<Scenario> scenarios;
  SensitivitySettings sensitivity;
  SimulationSettings simulation;
};

// Reads the JSON document at `path`; a relative lexicon path resolves against
// the document's directory. Throws Error on any schema or data problem.
ProjectConfig load_project(const std::string& path);

// Same, from an already parsed document.
ProjectConfig parse_project(const nlohmann::json& doc, const std::string& base_dir);

// "1/1821000" or a plain number.
double parse_probability(const nlohmann::json& value);

CandidateEntry parse_entry(const nlohmann::json& j);
Modification parse_modification(const nlohmann::json& j);

// Canonical JSON of the candidate lists and bonus rules; hashed into reports.
nlohmann::ordered_json lists_json(const CandidateLists& lists, const BonusPolicy& bonuses);

}  // namespace rrv
