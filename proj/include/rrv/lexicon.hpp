#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rrv/onomasticon.hpp"

namespace rrv {

// A generic-name frequency that the lexicon table does not carry and that an
// analysis supplies explicitly (e.g. a listed candidate without counts).
struct SupplementalFrequency {
  Gender gender = Gender::male;
  std::string generic;
  double frequency = 0.0;
  std::string note;
};

// Frequency source used by the RR engine and the null model: the onomasticon
// plus any supplemental generic frequencies. Supplements may not shadow a
// generic the onomasticon already counts.
class Lexicon {
 public:
  Lexicon() = default;
  explicit Lexicon(Onomasticon onom, std::vector<SupplementalFrequency> supplements = {});

  double generic_frequency(Gender gender, std::string_view generic) const;
  double rendition_frequency(Gender gender, std::string_view generic,
                             std::string_view rendition) const;
  bool has_generic(Gender gender, std::string_view generic) const;

  // Recorded renditions of a generic as (name, conditional frequency); empty
  // when the generic has no rendition denominator.
  std::vector<std::pair<std::string, double>> rendition_frequencies(
      Gender gender, std::string_view generic) const;

  const Onomasticon& onomasticon() const noexcept { return *onom_; }
  const std::vector<SupplementalFrequency>& supplements() const noexcept {
    return supplements_;
  }

  Lexicon with_supplement(SupplementalFrequency s) const;
  Lexicon scaled(std::int64_t factor) const;

 private:
  std::shared_ptr<const Onomasticon> onom_ = std::make_shared<Onomasticon>();
  std::vector<SupplementalFrequency> supplements_;
  std::map<std::pair<Gender, std::string>, double, std::less<>> supplement_index_;
};

}  // namespace rrv
