#include <gtest/gtest.h>

#include "egorank/error.hpp"
#include "egorank/textprep.hpp"
#include "support/gen.hpp"

namespace egorank::textprep {
namespace {

TEST(DetectAndTranslate, EnglishPassesThrough) {
  auto det = LanguageDetector::with_builtin_words();
  auto r = detect_and_translate("hello there", det);
  EXPECT_EQ(r.text, "hello there");
  EXPECT_FALSE(r.flagged_non_english);
}

TEST(DetectAndTranslate, ForeignFlaggedWithoutTranslator) {
  auto det = LanguageDetector::with_builtin_words();
  auto r = detect_and_translate("bonjour", det);
  EXPECT_EQ(r.text, "bonjour");
  EXPECT_TRUE(r.flagged_non_english);
  EXPECT_TRUE(detect_and_translate("\xE4\xB8\xAD\xE6\x96\x87\xE6\x96\x87\xE6\x9C\xAC", det).flagged_non_english);
}

TEST(DetectAndTranslate, DeclaredLanguageWins) {
  auto det = LanguageDetector::with_builtin_words();
  EXPECT_TRUE(detect_and_translate("hello there", det, nullptr, "es").flagged_non_english);
  EXPECT_FALSE(detect_and_translate("bonjour", det, nullptr, "en-GB").flagged_non_english);
}

TEST(DetectAndTranslate, FiveForeignDocsFlagged) {
  auto det = LanguageDetector::with_builtin_words();
  const std::vector<std::string> texts = {
      "hola como estas amigo", "bonjour mon ami merci", "guten morgen wie geht es",
      "ciao bella grazie mille", "obrigado muito bom dia",
      "the weather is nice today", "we are going to the game", "this is a good day"};
  int flagged = 0;
  for (const auto& t : texts) flagged += detect_and_translate(t, det).flagged_non_english;
  EXPECT_EQ(flagged, 5);
}

class FakeTranslator : public Translator {
 public:
  explicit FakeTranslator(bool up) : up_(up) {}
  bool available() const override { return up_; }
  std::string translate(std::string_view, std::string_view) override { return "good morning"; }

 private:
  bool up_;
};

TEST(DetectAndTranslate, TranslatorReplacesText) {
  auto det = LanguageDetector::with_builtin_words();
  FakeTranslator up(true), down(false);
  auto r = detect_and_translate("bonjour", det, &up);
  EXPECT_EQ(r.text, "good morning");
  EXPECT_FALSE(r.flagged_non_english);
  try {
    detect_and_translate("bonjour", det, &down);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kTranslatorUnavailable);
  }
  // English never reaches the translator.
  EXPECT_EQ(detect_and_translate("hello there", det, &down).text, "hello there");
}

TEST(ExtractMentions, Examples) {
  auto a = extract_mentions("hello @alice how are you");
  EXPECT_EQ(a.text, "hello how are you");
  EXPECT_EQ(a.mentions, std::vector<std::string>{"alice"});

  auto b = extract_mentions("no mentions here.");
  EXPECT_EQ(b.text, "no mentions here.");
  EXPECT_TRUE(b.mentions.empty());

  auto c = extract_mentions("@a @b @a hi");
  EXPECT_EQ(c.text, "hi");
  EXPECT_EQ(c.mentions, (std::vector<std::string>{"a", "b"}));
}

TEST(ExtractMentions, HandleStopsAtNonHandleChar) {
  auto r = extract_mentions("thanks @bob_99! and @ alone");
  EXPECT_EQ(r.mentions, std::vector<std::string>{"bob_99"});
  EXPECT_EQ(r.text, "thanks and @ alone");
}

TEST(StripNoise, Examples) {
  EXPECT_EQ(strip_noise("great!!! \xF0\x9F\x98\x80 #win"), "great win");
  EXPECT_EQ(strip_noise("ok."), "ok.");
  EXPECT_EQ(strip_noise("a,,b...c"), "a,,b...c");
  EXPECT_EQ(strip_noise("  tab\there\r\nnext\xC2\xA0line  "), "tab here next line");
  EXPECT_EQ(strip_noise("bad\xFF\xC3 bytes\xEF\xBF\xBD"), "bad bytes");
}

TEST(NormalizeCaseAndSpell, LowercaseOnlyWithoutDictionary) {
  EXPECT_EQ(normalize_case_and_spell("Hello World"), "hello world");
}

TEST(NormalizeCaseAndSpell, CorrectsToFrequentNeighbour) {
  SpellingCorrector sp({{"hello", 10}, {"hall", 50}, {"world", 5}});
  EXPECT_EQ(normalize_case_and_spell("helo", &sp), "hello");
  EXPECT_EQ(normalize_case_and_spell("zzqzz", &sp), "zzqzz");
  EXPECT_EQ(normalize_case_and_spell("Wrold, helo.", &sp), "world, hello.");
}

TEST(SpellingCorrector, TiesGoToLexicographicallySmallest) {
  SpellingCorrector sp({{"cat", 3}, {"bat", 3}, {"hat", 1}});
  EXPECT_EQ(sp.correct("aat"), "bat");
  EXPECT_EQ(sp.correct("cat"), "cat");
}

TEST(SpellingCorrector, Edits1MatchesIndependentCount) {
  // n deletes, n-1 transposes, 25n replaces (identity skipped), 26(n+1) inserts.
  const std::string w = "word";
  EXPECT_EQ(edits1(w).size(), 4u + 3u + 25u * 4u + 26u * 5u);
}

TEST(PrimaryPreprocess, HandTrace) {
  Document d;
  d.doc_id = "ego:d1:p1";
  d.owner_id = "ego";
  d.text = "Check @Bob NOW!!! \xF0\x9F\x9A\x80";
  d.source.language = "en";
  auto c = primary_preprocess(d);
  EXPECT_EQ(c.text, "check now");
  EXPECT_EQ(c.mentions, std::vector<std::string>{"Bob"});
  EXPECT_FALSE(c.flagged_non_english);
}

TEST(PrimaryPreprocess, CleanTextIsFixedPoint) {
  Document d;
  d.text = "already clean text, with a full stop.";
  d.source.language = "en";
  EXPECT_EQ(primary_preprocess(d).text, d.text);
}

TEST(PrimaryPreprocess, RejectsDataset5) {
  Document d;
  d.dataset_no = 5;
  try {
    primary_preprocess(d);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kPrecondition);
  }
}

TEST(TextprepProperties, IdempotenceAndAlphabet) {
  testing::Gen g(11);
  Document d;
  d.source.language = "en";
  for (int i = 0; i < 2000; ++i) {
    const std::string s = g.unicode_text();
    const std::string stripped = strip_noise(s);
    ASSERT_EQ(strip_noise(stripped), stripped) << s;
    ASSERT_EQ(lowercase(lowercase(s)), lowercase(s));
    auto m = extract_mentions(s);
    auto m2 = extract_mentions(m.text);
    ASSERT_EQ(m2.text, m.text) << s;
    ASSERT_TRUE(m2.mentions.empty()) << s;
    for (const auto& x : m.mentions) ASSERT_EQ(x.find('@'), std::string::npos);
    d.text = s;
    ASSERT_TRUE(has_clean_alphabet(primary_preprocess(d).text)) << s;
  }
}

TEST(TextprepProperties, MentionRemovalKeepsTokenOrder) {
  testing::Gen g(12);
  for (int i = 0; i < 500; ++i) {
    std::vector<std::string> words;
    std::string text;
    for (std::size_t k = g.between(1, 12); k > 0; --k) {
      if (g.chance(0.3)) {
        text += "@" + g.word() + " ";
      } else {
        words.push_back(g.word());
        text += words.back() + " ";
      }
    }
    auto r = extract_mentions(text);
    std::string expected;
    for (const auto& w : words) expected += (expected.empty() ? "" : " ") + w;
    if (r.mentions.empty()) {
      EXPECT_EQ(r.text, text);
    } else {
      EXPECT_EQ(r.text, expected);
    }
  }
}

}  // namespace
}  // namespace egorank::textprep
