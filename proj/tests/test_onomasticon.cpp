#include <gtest/gtest.h>

#include <sstream>

#include "fixture.hpp"
#include "rrv/error.hpp"
#include "rrv/onomasticon.hpp"
#include "rrv/text.hpp"

using namespace rrv;

namespace {

ErrorCode load_error(const std::string& csv) {
  std::istringstream in(csv);
  try {
    load_onomasticon(in);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error for:\n" << csv;
  return ErrorCode::InvalidArgument;
}

const std::string kHeader = "gender,generic,rendition,source,count\n";

}  // namespace

TEST(Onomasticon, LoadsShippedTable) {
  const auto o = load_onomasticon_file(fx::data_path("talpiot_lexicon.csv"));
  EXPECT_EQ(o.total(Gender::male, Source::all_sources), 2509);
  EXPECT_EQ(o.total(Gender::female, Source::all_sources), 317);
  EXPECT_EQ(o.rendition_denominator(Gender::female, "Mariam"), 44);
  EXPECT_DOUBLE_EQ(o.generic_frequency(Gender::female, "Mariam"), 74.0 / 317.0);
  EXPECT_DOUBLE_EQ(o.generic_frequency(Gender::male, "Yoseph"), 221.0 / 2509.0);
  EXPECT_DOUBLE_EQ(o.rendition_frequency(Gender::female, "Mariam", "Marya"), 13.0 / 44.0);
  EXPECT_DOUBLE_EQ(o.rendition_frequency(Gender::male, "Yoseph", "Yoseh"), 7.0 / 46.0);
}

TEST(Onomasticon, LoaderMatchesTypedCounts) {
  const auto a = load_onomasticon_file(fx::data_path("talpiot_lexicon.csv"));
  const auto b = fx::counts();
  for (auto g : {Gender::male, Gender::female}) {
    ASSERT_EQ(a.generics(g), b.generics(g));
    for (const auto& n : a.generics(g)) EXPECT_EQ(a.generic_frequency(g, n), b.generic_frequency(g, n));
  }
}

TEST(Onomasticon, Errors) {
  EXPECT_EQ(load_error(kHeader + "male,Yeshua,,all_sources,5\n"), ErrorCode::MissingTotal);
  EXPECT_EQ(load_error(kHeader + "male,__TOTAL__,,all_sources,10\nmale,Yeshua,,all_sources,5\nmale,Yeshua,,all_sources,3\n"),
            ErrorCode::DuplicateKey);
  EXPECT_EQ(load_error(kHeader + "male,__TOTAL__,,all_sources,10\nmale,Yeshua,,all_sources,-1\n"),
            ErrorCode::NegativeCount);
  EXPECT_EQ(load_error("gender,name,count\nmale,A,1\n"), ErrorCode::MalformedRow);
  EXPECT_EQ(load_error(kHeader + "male,__TOTAL__,,all_sources,10\nmale,Yeshua,all_sources,5\n"),
            ErrorCode::MalformedRow);
  EXPECT_EQ(load_error(kHeader + "male,__TOTAL__,,all_sources,10\nmale,Yeshua,,all_sources,five\n"),
            ErrorCode::MalformedRow);
  EXPECT_EQ(load_error(""), ErrorCode::MissingTotal);
  EXPECT_EQ(load_error(kHeader + "male,__TOTAL__,,all_sources,10\nmale,Yoseph,,all_sources,5\nmale,Yoseph,Yoseh,ossuary,2\n"),
            ErrorCode::MissingTotal);
  EXPECT_EQ(load_error(kHeader + "male,__TOTAL__,,all_sources,10\nmale,Y\xff,,all_sources,5\n"), ErrorCode::MalformedRow);
}

TEST(Onomasticon, QueryErrors) {
  const auto o = fx::counts();
  try {
    o.generic_frequency(Gender::male, "Nobody");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NameNotFound);
  }
  try {
    o.rendition_frequency(Gender::male, "Yeshua", "Yeshu");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MissingDenominator);
  }
  try {
    o.rendition_frequency(Gender::male, "Yoseph", "Yosi");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NameNotFound);
  }
}

TEST(Onomasticon, CommentsBlankLinesQuotesAndBom) {
  std::istringstream in("\xEF\xBB\xBF" + kHeader + "# comment\n\nmale,__TOTAL__,,all_sources,10\n\"male\", \"Yeshua\" ,,all_sources,4\n");
  const auto o = load_onomasticon(in);
  EXPECT_DOUBLE_EQ(o.generic_frequency(Gender::male, "Yeshua"), 0.4);
}

TEST(Onomasticon, NamesAreNfcNormalised) {
  // e + combining acute versus precomposed e-acute
  std::istringstream in(kHeader + "female,__TOTAL__,,all_sources,10\nfemale,Rene\xCC\x81,,all_sources,3\n");
  const auto o = load_onomasticon(in);
  EXPECT_TRUE(o.has_generic(Gender::female, nfc("Ren\xC3\xA9")));
  EXPECT_EQ(nfc("Rene\xCC\x81"), "Ren\xC3\xA9");
  EXPECT_THROW(nfc("\xC3"), Error);
}

TEST(Onomasticon, WriteRoundTrip) {
  const auto a = fx::counts();
  std::ostringstream out;
  write_onomasticon(out, a);
  std::istringstream in(out.str());
  const auto b = load_onomasticon(in);
  std::ostringstream again;
  write_onomasticon(again, b);
  EXPECT_EQ(out.str(), again.str());
  EXPECT_EQ(a.totals(), b.totals());
  EXPECT_EQ(a.rendition_denominators(), b.rendition_denominators());
}

TEST(Onomasticon, ScalingLeavesFrequenciesBitIdentical) {
  const auto a = fx::counts();
  for (std::int64_t k : {2, 7, 1000}) {
    const auto b = a.scaled(k);
    for (auto g : {Gender::male, Gender::female}) {
      for (const auto& n : a.generics(g)) EXPECT_EQ(a.generic_frequency(g, n), b.generic_frequency(g, n));
    }
    EXPECT_EQ(a.rendition_frequency(Gender::male, "Yoseph", "Yoseh"),
              b.rendition_frequency(Gender::male, "Yoseph", "Yoseh"));
  }
}

TEST(Lexicon, SupplementsCannotShadowCounts) {
  const Lexicon lex(fx::counts());
  EXPECT_THROW(lex.with_supplement({Gender::male, "Yeshua", 0.1, ""}), Error);
  EXPECT_THROW(lex.with_supplement({Gender::male, "James", 0.0, ""}), Error);
  const auto with = lex.with_supplement({Gender::male, "James", 0.018, ""});
  EXPECT_EQ(with.generic_frequency(Gender::male, "James"), 0.018);
  EXPECT_THROW(with.with_supplement({Gender::male, "James", 0.02, ""}), Error);
  const auto r = with.rendition_frequencies(Gender::male, "Yoseph");
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r[0].first, "Yoseh");
  EXPECT_DOUBLE_EQ(r[0].second, 7.0 / 46.0);
}
