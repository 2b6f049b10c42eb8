#pragma once

// Primary text preprocessing applied to every content dataset: language
// handling, @mention harvesting, noise removal, lowercasing and optional
// spelling correction. Everything here is a pure function of its inputs.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "egorank/corpus.hpp"

namespace egorank::textprep {

struct CleanDocument {
  std::string doc_id;
  std::string owner_id;
  int dataset_no = 1;
  std::optional<std::string> parent_doc_id;
  std::string text;  // [a-z0-9 ,.]* with single spaces
  std::vector<std::string> mentions;
  bool flagged_non_english = false;

  friend bool operator==(const CleanDocument&, const CleanDocument&) = default;
};

// Hook for a machine-translation backend. None ships with the library.
class Translator {
 public:
  virtual ~Translator() = default;
  virtual bool available() const = 0;
  virtual std::string translate(std::string_view text, std::string_view source_language) = 0;
};

// Decides whether a text is English. A declared language tag wins when it
// is present ("en", "en-GB", ... vs anything other than "und"). Otherwise
// the text is English when at most 20% of its letters are non-Latin and at
// least `min_known_ratio` of its words are in the known-word set. @handles,
// #tags and URLs are ignored.
class LanguageDetector {
 public:
  explicit LanguageDetector(std::unordered_set<std::string> known_words,
                            double min_known_ratio = 0.5);

  // Detector seeded with a few hundred common English words.
  static LanguageDetector with_builtin_words();

  void add_words(const std::vector<std::string>& words);
  bool is_english(std::string_view text, std::string_view declared_language = "und") const;

 private:
  std::unordered_set<std::string> known_;
  double min_known_ratio_;
};

struct TranslationResult {
  std::string text;
  bool flagged_non_english = false;
};

// English passes through unchanged. Non-English text is translated when a
// translator is configured (TranslatorUnavailable if it cannot be reached)
// and otherwise returned as is with the flag set.
TranslationResult detect_and_translate(std::string_view text, const LanguageDetector& detector,
                                       Translator* translator = nullptr,
                                       std::string_view declared_language = "und");

struct MentionResult {
  std::string text;
  std::vector<std::string> mentions;  // '@' stripped, first-seen order, unique
};

// Removes every whitespace-delimited token that starts with '@' followed by
// a handle character [A-Za-z0-9_]. The handle is the leading run of such
// characters. Text without mentions is returned verbatim; otherwise the
// surviving tokens are joined by single spaces.
MentionResult extract_mentions(std::string_view text);

// Keeps ASCII letters, digits, ',' and '.'; every kind of whitespace becomes
// a space; all other code points (symbols, emoji, non-Latin script,
// malformed UTF-8) are dropped. Whitespace runs collapse and ends are trimmed.
std::string strip_noise(std::string_view text);

std::string lowercase(std::string_view text);

// Norvig-style single-edit corrector over a unigram frequency lexicon.
class SpellingCorrector {
 public:
  explicit SpellingCorrector(std::unordered_map<std::string, std::uint64_t> counts);

  // UTF-8 lines "word<TAB>count".
  static SpellingCorrector load(const std::filesystem::path& path);

  bool contains(const std::string& word) const { return counts_.count(word) > 0; }
  // Returns `word` if known; otherwise the most frequent dictionary word at
  // edit distance 1 (ties: lexicographically smallest), or `word` if none.
  std::string correct(const std::string& word) const;

  const std::unordered_map<std::string, std::uint64_t>& counts() const { return counts_; }

 private:
  std::unordered_map<std::string, std::uint64_t> counts_;
};

// All strings at Damerau edit distance 1 over a-z (deletes, transposes,
// replacements, inserts). May contain duplicates.
std::vector<std::string> edits1(const std::string& word);

// Lowercases, then corrects each purely alphabetic token when a corrector
// is given. Non-token characters are left in place.
std::string normalize_case_and_spell(std::string_view text, const SpellingCorrector* speller = nullptr);

struct PrimaryConfig {
  const LanguageDetector* detector = nullptr;  // nullptr: builtin detector
  Translator* translator = nullptr;
  const SpellingCorrector* speller = nullptr;
};

// detect_and_translate -> extract_mentions -> strip_noise ->
// normalize_case_and_spell. Dataset 5 is rejected with Precondition.
CleanDocument primary_preprocess(const Document& doc, const PrimaryConfig& config = {});

// True if every byte is in [a-z0-9 ,.].
bool has_clean_alphabet(std::string_view text);

}  // namespace egorank::textprep
