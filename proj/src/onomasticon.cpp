#include "rrv/onomasticon.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>

#include "rrv/error.hpp"
#include "rrv/text.hpp"

namespace rrv {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::MalformedRow: return "MalformedRow";
    case ErrorCode::DuplicateKey: return "DuplicateKey";
    case ErrorCode::NegativeCount: return "NegativeCount";
    case ErrorCode::MissingTotal: return "MissingTotal";
    case ErrorCode::NameNotFound: return "NameNotFound";
    case ErrorCode::MissingDenominator: return "MissingDenominator";
    case ErrorCode::NegativeMass: return "NegativeMass";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::DegenerateInputs: return "DegenerateInputs";
    case ErrorCode::InconsistentScenario: return "InconsistentScenario";
    case ErrorCode::UnresolvedReference: return "UnresolvedReference";
    case ErrorCode::InconsistentPlant: return "InconsistentPlant";
    case ErrorCode::ZeroSlots: return "ZeroSlots";
    case ErrorCode::InvalidConfiguration: return "InvalidConfiguration";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

std::string_view to_string(Gender g) noexcept {
  return g == Gender::male ? "male" : "female";
}

std::string_view to_string(Source s) noexcept {
  return s == Source::all_sources ? "all_sources" : "ossuary";
}

Gender parse_gender(std::string_view text) {
  if (text == "male") return Gender::male;
  if (text == "female") return Gender::female;
  throw Error(ErrorCode::InvalidArgument, "unknown gender '" + std::string(text) + "'");
}

Source parse_source(std::string_view text) {
  if (text == "all_sources") return Source::all_sources;
  if (text == "ossuary") return Source::ossuary;
  throw Error(ErrorCode::InvalidArgument, "unknown source '" + std::string(text) + "'");
}

namespace {

std::string describe(Gender g, std::string_view generic, std::string_view rendition = {}) {
  std::string s = std::string(to_string(g)) + "/" + std::string(generic);
  if (!rendition.empty()) s += "/" + std::string(rendition);
  return s;
}

}  // namespace

Onomasticon::Onomasticon(
    std::vector<NameRecord> records,
    std::map<std::pair<Gender, Source>, std::int64_t> totals,
    std::map<std::pair<Gender, std::string>, std::int64_t> rendition_denominators)
    : records_(std::move(records)),
      totals_(std::move(totals)),
      denominators_(std::move(rendition_denominators)) {
  for (const auto& [key, total] : totals_) {
    if (total <= 0) {
      throw Error(ErrorCode::MissingTotal, "total for " + std::string(to_string(key.first)) +
                                               "/" + std::string(to_string(key.second)) +
                                               " must be positive");
    }
  }
  for (const auto& [key, denom] : denominators_) {
    if (denom <= 0) {
      throw Error(ErrorCode::MissingTotal,
                  "rendition denominator for " + describe(key.first, key.second) +
                      " must be positive");
    }
  }

  std::map<std::pair<Gender, std::string>, std::int64_t> rendition_sums;
  for (const auto& r : records_) {
    if (r.generic.empty() || r.generic == kTotalMarker) {
      throw Error(ErrorCode::MalformedRow, "record with empty or reserved generic name");
    }
    if (r.rendition && (r.rendition->empty() || *r.rendition == kTotalMarker)) {
      throw Error(ErrorCode::MalformedRow, "record with empty or reserved rendition name");
    }
    if (r.count < 0) {
      throw Error(ErrorCode::NegativeCount, describe(r.gender, r.generic, r.rendition.value_or("")));
    }
    Key key{r.gender, r.generic, r.rendition.value_or(""), r.source};
    if (!counts_.emplace(key, r.count).second) {
      throw Error(ErrorCode::DuplicateKey,
                  describe(r.gender, r.generic, r.rendition.value_or("")) + " (" +
                      std::string(to_string(r.source)) + ")");
    }
    if (r.rendition) {
      auto denom = denominators_.find({r.gender, r.generic});
      if (denom == denominators_.end()) {
        throw Error(ErrorCode::MissingTotal,
                    "no rendition denominator for " + describe(r.gender, r.generic));
      }
      if (r.count > denom->second) {
        throw Error(ErrorCode::MalformedRow, describe(r.gender, r.generic, *r.rendition) +
                                                 " count exceeds its rendition denominator");
      }
      rendition_sums[{r.gender, r.generic}] += r.count;
    } else {
      auto total = totals_.find({r.gender, r.source});
      if (total == totals_.end()) {
        throw Error(ErrorCode::MissingTotal,
                    "no total row for " + std::string(to_string(r.gender)) + "/" +
                        std::string(to_string(r.source)));
      }
      if (r.count > total->second) {
        throw Error(ErrorCode::MalformedRow,
                    describe(r.gender, r.generic) + " count exceeds its gender total");
      }
    }
  }
  for (const auto& [key, sum] : rendition_sums) {
    if (sum > denominators_.at(key)) {
      throw Error(ErrorCode::MalformedRow,
                  "renditions of " + describe(key.first, key.second) +
                      " sum past their denominator");
    }
  }
  if (totals_.empty()) {
    throw Error(ErrorCode::MissingTotal, "no total rows present");
  }
}

std::optional<std::int64_t> Onomasticon::count(Gender g, std::string_view generic,
                                               std::string_view rendition, Source s) const {
  auto it = counts_.find(std::make_tuple(g, generic, rendition, s));
  if (it == counts_.end()) return std::nullopt;
  return it->second;
}

double Onomasticon::generic_frequency(Gender gender, std::string_view generic) const {
  const auto name = nfc(generic);
  auto c = count(gender, name, "", Source::all_sources);
  if (!c) throw Error(ErrorCode::NameNotFound, describe(gender, name));
  auto t = total(gender, Source::all_sources);
  if (!t) throw Error(ErrorCode::MissingTotal, std::string(to_string(gender)) + "/all_sources");
  return static_cast<double>(*c) / static_cast<double>(*t);
}

double Onomasticon::rendition_frequency(Gender gender, std::string_view generic,
                                        std::string_view rendition) const {
  const auto g = nfc(generic);
  const auto r = nfc(rendition);
  auto denom = rendition_denominator(gender, g);
  if (!denom) throw Error(ErrorCode::MissingDenominator, describe(gender, g));
  auto c = count(gender, g, r, Source::ossuary);
  if (!c) throw Error(ErrorCode::NameNotFound, describe(gender, g, r));
  return static_cast<double>(*c) / static_cast<double>(*denom);
}

bool Onomasticon::has_generic(Gender gender, std::string_view generic) const {
  return count(gender, nfc(generic), "", Source::all_sources).has_value();
}

bool Onomasticon::has_rendition_denominator(Gender gender, std::string_view generic) const {
  return rendition_denominator(gender, generic).has_value();
}

std::optional<std::int64_t> Onomasticon::total(Gender gender, Source source) const {
  auto it = totals_.find({gender, source});
  if (it == totals_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::int64_t> Onomasticon::rendition_denominator(
    Gender gender, std::string_view generic) const {
  auto it = denominators_.find({gender, nfc(generic)});
  if (it == denominators_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::string> Onomasticon::generics(Gender gender) const {
  std::vector<std::string> out;
  for (const auto& [key, c] : counts_) {
    const auto& [g, generic, rendition, source] = key;
    if (g == gender && rendition.empty() && source == Source::all_sources) {
      out.push_back(generic);
    }
  }
  return out;
}

std::vector<std::pair<std::string, std::int64_t>> Onomasticon::renditions(
    Gender gender, std::string_view generic) const {
  const auto name = nfc(generic);
  std::vector<std::pair<std::string, std::int64_t>> out;
  for (const auto& [key, c] : counts_) {
    const auto& [g, gen, rendition, source] = key;
    if (g == gender && gen == name && !rendition.empty() && source == Source::ossuary) {
      out.emplace_back(rendition, c);
    }
  }
  return out;
}

Onomasticon Onomasticon::scaled(std::int64_t factor) const {
  if (factor <= 0) throw Error(ErrorCode::InvalidArgument, "scale factor must be positive");
  auto records = records_;
  for (auto& r : records) r.count *= factor;
  auto totals = totals_;
  for (auto& [k, v] : totals) v *= factor;
  auto denominators = denominators_;
  for (auto& [k, v] : denominators) v *= factor;
  return Onomasticon(std::move(records), std::move(totals), std::move(denominators));
}

namespace {

// Minimal RFC 4180 field splitter: commas, double-quoted fields, "" escapes.
std::vector<std::string> split_csv(std::string_view line, std::size_t line_no) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          fields.back() += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  if (quoted) {
    throw Error(ErrorCode::MalformedRow, "line " + std::to_string(line_no) + ": unterminated quote");
  }
  return fields;
}

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

std::int64_t parse_count(const std::string& text, std::size_t line_no) {
  std::int64_t value = 0;
  const char* begin = text.data();
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw Error(ErrorCode::MalformedRow,
                "line " + std::to_string(line_no) + ": count '" + text + "' is not an integer");
  }
  if (value < 0) {
    throw Error(ErrorCode::NegativeCount,
                "line " + std::to_string(line_no) + ": count " + text);
  }
  return value;
}

std::string normalized(const std::string& name, std::size_t line_no) {
  try {
    return nfc(name);
  } catch (const Error&) {
    throw Error(ErrorCode::MalformedRow, "line " + std::to_string(line_no) + ": invalid UTF-8");
  }
}

}  // namespace

Onomasticon load_onomasticon(std::istream& in) {
  static const std::vector<std::string> kHeader = {"gender", "generic", "rendition", "source",
                                                   "count"};
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  std::vector<NameRecord> records;
  std::map<std::pair<Gender, Source>, std::int64_t> totals;
  std::map<std::pair<Gender, std::string>, std::int64_t> denominators;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
    if (trim(line).empty() || line.front() == '#') continue;

    auto fields = split_csv(line, line_no);
    for (auto& f : fields) f = trim(std::move(f));
    if (!have_header) {
      if (fields != kHeader) {
        throw Error(ErrorCode::MalformedRow,
                    "line " + std::to_string(line_no) +
                        ": expected header gender,generic,rendition,source,count");
      }
      have_header = true;
      continue;
    }
    if (fields.size() != kHeader.size()) {
      throw Error(ErrorCode::MalformedRow, "line " + std::to_string(line_no) + ": expected 5 columns, got " +
                                               std::to_string(fields.size()));
    }
    Gender gender;
    Source source;
    try {
      gender = parse_gender(fields[0]);
      source = parse_source(fields[3]);
    } catch (const Error& e) {
      throw Error(ErrorCode::MalformedRow, "line " + std::to_string(line_no) + ": " + e.what());
    }
    const auto count = parse_count(fields[4], line_no);
    const auto generic = normalized(fields[1], line_no);
    const auto rendition = normalized(fields[2], line_no);
    if (generic.empty()) {
      throw Error(ErrorCode::MalformedRow, "line " + std::to_string(line_no) + ": empty generic");
    }

    if (generic == kTotalMarker) {
      if (!rendition.empty()) {
        throw Error(ErrorCode::MalformedRow,
                    "line " + std::to_string(line_no) + ": total row must have empty rendition");
      }
      if (!totals.emplace(std::pair{gender, source}, count).second) {
        throw Error(ErrorCode::DuplicateKey, "line " + std::to_string(line_no) + ": total " +
                                                 std::string(to_string(gender)) + "/" +
                                                 std::string(to_string(source)));
      }
    } else if (rendition == kTotalMarker) {
      if (source != Source::ossuary) {
        throw Error(ErrorCode::MalformedRow, "line " + std::to_string(line_no) +
                                                 ": rendition denominators use source=ossuary");
      }
      if (!denominators.emplace(std::pair{gender, generic}, count).second) {
        throw Error(ErrorCode::DuplicateKey,
                    "line " + std::to_string(line_no) + ": denominator " + describe(gender, generic));
      }
    } else {
      NameRecord r;
      r.gender = gender;
      r.generic = generic;
      if (!rendition.empty()) {
        if (source != Source::ossuary) {
          throw Error(ErrorCode::MalformedRow,
                      "line " + std::to_string(line_no) + ": rendition rows use source=ossuary");
        }
        r.rendition = rendition;
      }
      r.source = source;
      r.count = count;
      records.push_back(std::move(r));
    }
  }
  if (totals.empty()) {
    throw Error(ErrorCode::MissingTotal, "no total rows present");
  }
  return Onomasticon(std::move(records), std::move(totals), std::move(denominators));
}

Onomasticon load_onomasticon_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open lexicon '" + path + "'");
  return load_onomasticon(in);
}

namespace {

std::string quote_if_needed(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

void write_onomasticon(std::ostream& out, const Onomasticon& onom) {
  out << "gender,generic,rendition,source,count\n";
  for (const auto& [key, total] : onom.totals()) {
    out << to_string(key.first) << ',' << kTotalMarker << ",," << to_string(key.second) << ','
        << total << '\n';
  }
  for (const auto& [key, denom] : onom.rendition_denominators()) {
    out << to_string(key.first) << ',' << quote_if_needed(key.second) << ',' << kTotalMarker
        << ",ossuary," << denom << '\n';
  }
  for (const auto& r : onom.records()) {
    out << to_string(r.gender) << ',' << quote_if_needed(r.generic) << ','
        << quote_if_needed(r.rendition.value_or("")) << ',' << to_string(r.source) << ','
        << r.count << '\n';
  }
}

}  // namespace rrv
