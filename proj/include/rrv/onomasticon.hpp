#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

namespace rrv {

enum class Gender { male, female };
enum class Source { all_sources, ossuary };

std::string_view to_string(Gender g) noexcept;
std::string_view to_string(Source s) noexcept;
Gender parse_gender(std::string_view text);
Source parse_source(std::string_view text);

// Reserved name marking total rows in the lexicon CSV.
inline constexpr std::string_view kTotalMarker = "__TOTAL__";

struct NameRecord {
  Gender gender = Gender::male;
  std::string generic;
  std::optional<std::string> rendition;  // absent = generic-level count
  Source source = Source::all_sources;
  std::int64_t count = 0;
};

// Gendered name-frequency tables. Immutable after load; all frequencies are
// derived on demand from integer counts.
class Onomasticon {
 public:
  // Validates and builds from raw records and totals. Names are expected to
  // be NFC-normalised already (load_onomasticon does this).
  Onomasticon(std::vector<NameRecord> records,
              std::map<std::pair<Gender, Source>, std::int64_t> totals,
              std::map<std::pair<Gender, std::string>, std::int64_t> rendition_denominators);
  Onomasticon() = default;

  // count(generic, all_sources) / total(gender, all_sources).
  double generic_frequency(Gender gender, std::string_view generic) const;

  // ossuary count(rendition) / rendition_denominator(gender, generic).
  double rendition_frequency(Gender gender, std::string_view generic,
                             std::string_view rendition) const;

  bool has_generic(Gender gender, std::string_view generic) const;
  bool has_rendition_denominator(Gender gender, std::string_view generic) const;

  std::optional<std::int64_t> total(Gender gender, Source source) const;
  std::optional<std::int64_t> rendition_denominator(Gender gender,
                                                    std::string_view generic) const;

  // Generic-level all-source names for a gender, in sorted order.
  std::vector<std::string> generics(Gender gender) const;
  // Recorded renditions (ossuary source) of a generic with their counts.
  std::vector<std::pair<std::string, std::int64_t>> renditions(
      Gender gender, std::string_view generic) const;

  const std::vector<NameRecord>& records() const noexcept { return records_; }
  const std::map<std::pair<Gender, Source>, std::int64_t>& totals() const noexcept {
    return totals_;
  }
  const std::map<std::pair<Gender, std::string>, std::int64_t>& rendition_denominators()
      const noexcept {
    return denominators_;
  }

  // Same data with every count multiplied by `factor`.
  Onomasticon scaled(std::int64_t factor) const;

 private:
  using Key = std::tuple<Gender, std::string, std::string, Source>;  // "" = no rendition
  std::optional<std::int64_t> count(Gender g, std::string_view generic,
                                    std::string_view rendition, Source s) const;

  std::vector<NameRecord> records_;
  std::map<Key, std::int64_t, std::less<>> counts_;
  std::map<std::pair<Gender, Source>, std::int64_t> totals_;
  std::map<std::pair<Gender, std::string>, std::int64_t> denominators_;
};

// Parses the `gender,generic,rendition,source,count` CSV format.
Onomasticon load_onomasticon(std::istream& in);
Onomasticon load_onomasticon_file(const std::string& path);

// Writes the CSV format back out; load(write(x)) reproduces x exactly.
void write_onomasticon(std::ostream& out, const Onomasticon& onom);

}  // namespace rrv
