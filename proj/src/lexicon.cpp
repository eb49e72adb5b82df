#include "rrv/lexicon.hpp"

#include "rrv/error.hpp"
#include "rrv/text.hpp"

namespace rrv {

Lexicon::Lexicon(Onomasticon onom, std::vector<SupplementalFrequency> supplements)
    : onom_(std::make_shared<const Onomasticon>(std::move(onom))) {
  for (auto& s : supplements) {
    s.generic = nfc(s.generic);
    if (s.generic.empty()) {
      throw Error(ErrorCode::InvalidConfiguration, "supplemental frequency without a name");
    }
    if (!(s.frequency > 0.0 && s.frequency <= 1.0)) {
      throw Error(ErrorCode::InvalidConfiguration,
                  "supplemental frequency for " + s.generic + " must lie in (0, 1]");
    }
    if (onom_->has_generic(s.gender, s.generic)) {
      throw Error(ErrorCode::InvalidConfiguration,
                  "supplemental frequency for " + s.generic + " shadows a lexicon count");
    }
    if (!supplement_index_.emplace(std::pair{s.gender, s.generic}, s.frequency).second) {
      throw Error(ErrorCode::DuplicateKey, "supplemental frequency for " + s.generic);
    }
    supplements_.push_back(std::move(s));
  }
}

double Lexicon::generic_frequency(Gender gender, std::string_view generic) const {
  const auto name = nfc(generic);
  if (auto it = supplement_index_.find(std::pair{gender, name}); it != supplement_index_.end()) {
    return it->second;
  }
  return onom_->generic_frequency(gender, name);
}

double Lexicon::rendition_frequency(Gender gender, std::string_view generic,
                                    std::string_view rendition) const {
  return onom_->rendition_frequency(gender, generic, rendition);
}

bool Lexicon::has_generic(Gender gender, std::string_view generic) const {
  const auto name = nfc(generic);
  return supplement_index_.contains(std::pair{gender, name}) || onom_->has_generic(gender, name);
}

std::vector<std::pair<std::string, double>> Lexicon::rendition_frequencies(
    Gender gender, std::string_view generic) const {
  std::vector<std::pair<std::string, double>> out;
  const auto denom = onom_->rendition_denominator(gender, generic);
  if (!denom) return out;
  for (const auto& [name, count] : onom_->renditions(gender, generic)) {
    out.emplace_back(name, static_cast<double>(count) / static_cast<double>(*denom));
  }
  return out;
}

Lexicon Lexicon::with_supplement(SupplementalFrequency s) const {
  auto supplements = supplements_;
  supplements.push_back(std::move(s));
  return Lexicon(*onom_, std::move(supplements));
}

Lexicon Lexicon::scaled(std::int64_t factor) const {
  return Lexicon(onom_->scaled(factor), supplements_);
}

}  // namespace rrv
