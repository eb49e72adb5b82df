#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rrv/analysis.hpp"

namespace rrv {

enum class ModificationKind { demote_to_other, add_entry, remove_bonus, undiscard, set_other_rr };
std::string_view to_string(ModificationKind k) noexcept;

struct Modification {
  ModificationKind kind = ModificationKind::demote_to_other;
  std::optional<Gender> gender;  // entry gender; for set_other_rr, unset = both lists
  CandidateEntry entry;
  std::optional<double> frequency;  // add_entry: supplemental generic frequency
  std::string father;               // remove_bonus
  std::string son;
  std::string slot;                 // undiscard: ossuary label or inscription index
  double value = 1.0;               // set_other_rr

  static Modification demote_to_other(Gender g, CandidateEntry e);
  static Modification add_entry(Gender g, CandidateEntry e,
                                std::optional<double> frequency = std::nullopt);
  static Modification remove_bonus(std::string father, std::string son);
  static Modification undiscard(std::string slot);
  static Modification set_other_rr(double value, std::optional<Gender> g = std::nullopt);

  std::string label() const;
};

// Returns a modified copy; `base` is untouched. Throws
// Error(UnresolvedReference) when the modification names something absent.
AnalysisConfig apply_modification(const AnalysisConfig& base, const Modification& mod);
AnalysisConfig apply_modifications(const AnalysisConfig& base, const std::vector<Modification>& mods);

enum class ThresholdMode {
  own,     // each config's tail at its own cluster RR
  shared,  // both tails at the base cluster RR
};

struct CompareOptions {
  ThresholdMode threshold = ThresholdMode::own;
  std::vector<double> thetas{1.0, 0.5, 0.1};
  std::size_t workers = 1;
};

struct SensitivitySide {
  double cluster_rr = 1.0;
  double pre_bonus_rr = 1.0;
  double threshold = 1.0;
  double alpha = 1.0;
  std::uint64_t n_trials = 1;
  double q = 1.0;
  std::vector<PosteriorResult> posteriors;
};

struct SensitivityReport {
  std::string label;
  SensitivitySide base;
  SensitivitySide modified;
  double rr_ratio = 1.0;
  double alpha_ratio = 1.0;
  std::vector<std::string> narrative;
};

SensitivityReport compare(const AnalysisConfig& base, const AnalysisConfig& modified,
                          const CompareOptions& options = {}, std::string label = {});

struct AlphaVariant {
  std::string label;
  double alpha = 0.0;
};

struct SweepRow {
  std::string alpha_label;
  double alpha = 0.0;
  double theta = 0.0;
  double q = 0.0;
  double posterior = 0.0;
};

// Cross product of alpha variants (outer) and thetas (inner), in input order.
std::vector<SweepRow> sweep(const std::vector<double>& thetas,
                            const std::vector<AlphaVariant>& alphas, std::uint64_t n_trials,
                            MultiplicityMethod method);

}  // namespace rrv
