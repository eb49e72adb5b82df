#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rrv/config.hpp"

namespace rrv {

inline constexpr std::string_view kToolVersion = "1.0.0";

// Identifies a run. Worker counts are deliberately absent: outputs must not
// depend on them.
struct RunManifest {
  std::string command;
  std::string config_path;
  std::uint64_t config_hash = 0;
  std::uint64_t lexicon_hash = 0;
  std::optional<std::uint64_t> seed;
  nlohmann::ordered_json parameters = nlohmann::ordered_json::object();

  nlohmann::ordered_json to_json() const;
};

RunManifest manifest_for(const std::string& command, const ProjectConfig& pc);

// One command's output in the three supported renderings.
struct Report {
  nlohmann::ordered_json json;
  std::string csv;
  std::string table;
};

std::string hex64(std::uint64_t v);

Report ingest_report(const std::string& lexicon_path);

Report rr_report(const ProjectConfig& pc);

struct TailRunOptions {
  std::vector<TailMethod> methods{TailMethod::exact};
  std::uint64_t seed = 1;
  std::uint64_t mc_samples = 1'000'000;
  std::size_t workers = 1;
};
Report tail_report(const ProjectConfig& pc, const TailRunOptions& options);

Report posterior_report(const ProjectConfig& pc, std::size_t workers = 1);

Report sensitivity_report(const ProjectConfig& pc, std::size_t workers = 1);

struct SimulateOptions {
  std::uint64_t seed = 1;
  std::size_t workers = 1;
  std::optional<std::uint64_t> n_tombs;  // overrides every world's size
};
Report simulate_report(const ProjectConfig& pc, const SimulateOptions& options);

}  // namespace rrv
