#include "egorank/textprep.hpp"

#include <algorithm>
#include <fstream>

#include "egorank/error.hpp"
#include "text_util.hpp"
#include "utf8.hpp"

namespace egorank::textprep {

namespace {

constexpr std::string_view kBuiltinEnglish[] = {
    "a", "about", "after", "again", "all", "also", "always", "am", "an", "and", "any",
    "are", "around", "as", "at", "away", "back", "bad", "be", "because", "been", "before",
    "being", "best", "better", "big", "both", "but", "by", "call", "came", "can", "check",
    "come", "could", "day", "days", "did", "do", "does", "done", "down", "each", "even",
    "every", "everyone", "fact", "feel", "few", "find", "first", "for", "friend", "friends",
    "from", "get", "give", "go", "going", "good", "got", "great", "had", "happy", "has",
    "have", "he", "hello", "her", "here", "hey", "hi", "him", "his", "home", "how", "i",
    "if", "in", "into", "is", "it", "its", "just", "keep", "know", "last", "let", "life",
    "like", "little", "live", "long", "look", "lot", "love", "made", "make", "man", "many",
    "may", "me", "more", "most", "much", "must", "my", "need", "never", "new", "news",
    "next", "nice", "night", "no", "not", "now", "of", "off", "old", "on", "one", "only",
    "or", "other", "our", "out", "over", "people", "place", "please", "post", "read",
    "really", "right", "said", "same", "say", "see", "she", "should", "show", "so", "some",
    "something", "soon", "still", "such", "take", "tell", "than", "thank", "thanks", "that",
    "the", "their", "them", "then", "there", "these", "they", "thing", "things", "think",
    "this", "those", "through", "time", "to", "today", "together", "tomorrow", "too", "two",
    "under", "up", "us", "very", "want", "was", "watch", "way", "we", "week", "well",
    "were", "what", "when", "where", "which", "while", "who", "why", "will", "with",
    "without", "work", "world", "would", "wow", "yes", "yesterday", "yet", "you", "your",
};

bool is_handle_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
}

bool is_ascii_alnum(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f'; }

std::vector<std::string_view> whitespace_tokens(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_space(text[i])) ++i;
    std::size_t start = i;
    while (i < text.size() && !is_space(text[i])) ++i;
    if (i > start) out.push_back(text.substr(start, i - start));
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------

LanguageDetector::LanguageDetector(std::unordered_set<std::string> known_words, double min_known_ratio)
    : known_(std::move(known_words)), min_known_ratio_(min_known_ratio) {}

LanguageDetector LanguageDetector::with_builtin_words() {
  std::unordered_set<std::string> words;
  for (std::string_view w : kBuiltinEnglish) words.emplace(w);
  return LanguageDetector(std::move(words));
}

void LanguageDetector::add_words(const std::vector<std::string>& words) {
  known_.insert(words.begin(), words.end());
}

bool LanguageDetector::is_english(std::string_view text, std::string_view declared_language) const {
  declared_language = detail::trim(declared_language);
  if (!declared_language.empty() && !detail::iequals(declared_language, "und")) {
    if (declared_language.size() < 2) return false;
    return detail::iequals(declared_language.substr(0, 2), "en") &&
           (declared_language.size() == 2 || declared_language[2] == '-' ||
            declared_language[2] == '_');
  }

  std::size_t latin = 0;
  std::size_t other = 0;
  std::size_t words = 0;
  std::size_t known = 0;
  for (std::string_view tok : whitespace_tokens(text)) {
    if (tok.front() == '@' || tok.front() == '#' || tok.rfind("http://", 0) == 0 ||
        tok.rfind("https://", 0) == 0 || tok.rfind("www.", 0) == 0) {
      continue;
    }
    std::size_t i = 0;
    std::string word;
    auto flush = [&] {
      if (!word.empty()) {
        ++words;
        if (known_.count(word)) ++known;
        word.clear();
      }
    };
    while (i < tok.size()) {
      char32_t cp = detail::next_code_point(tok, i);
      if (cp < 0x80 && ((cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z'))) {
        ++latin;
        word.push_back(detail::ascii_lower(static_cast<char>(cp)));
      } else if (cp != detail::kInvalidCodePoint && detail::is_non_ascii_letter(cp)) {
        ++other;
        word.push_back('\x01');  // poisons the word so it never matches
      } else {
        flush();
      }
    }
    flush();
  }
  if (latin + other == 0) return true;
  if (static_cast<double>(other) > 0.2 * static_cast<double>(latin + other)) return false;
  if (words == 0) return true;
  return static_cast<double>(known) >= min_known_ratio_ * static_cast<double>(words);
}

TranslationResult detect_and_translate(std::string_view text, const LanguageDetector& detector,
                                       Translator* translator, std::string_view declared_language) {
  if (detector.is_english(text, declared_language)) return {std::string(text), false};
  if (translator == nullptr) return {std::string(text), true};
  if (!translator->available()) {
    throw Error(ErrorCode::kTranslatorUnavailable, "configured translator cannot be reached");
  }
  return {translator->translate(text, declared_language), false};
}

// ---------------------------------------------------------------------------

MentionResult extract_mentions(std::string_view text) {
  MentionResult out;
  std::vector<std::string_view> kept;
  bool removed_any = false;
  for (std::string_view tok : whitespace_tokens(text)) {
    if (tok.size() >= 2 && tok[0] == '@' && is_handle_char(tok[1])) {
      std::size_t end = 1;
      while (end < tok.size() && is_handle_char(tok[end])) ++end;
      std::string handle(tok.substr(1, end - 1));
      if (std::find(out.mentions.begin(), out.mentions.end(), handle) == out.mentions.end()) {
        out.mentions.push_back(std::move(handle));
      }
      removed_any = true;
    } else {
      kept.push_back(tok);
    }
  }
  if (!removed_any) {
    out.text = std::string(text);
    return out;
  }
  for (std::size_t i = 0; i < kept.size(); ++i) {
    if (i) out.text.push_back(' ');
    out.text.append(kept[i]);
  }
  return out;
}

std::string strip_noise(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  std::size_t i = 0;
  while (i < text.size()) {
    char32_t cp = detail::next_code_point(text, i);
    if (cp == detail::kInvalidCodePoint) continue;
    if (detail::is_unicode_space(cp)) {
      pending_space = !out.empty();
      continue;
    }
    if (cp < 0x80 && (is_ascii_alnum(static_cast<char>(cp)) || cp == ',' || cp == '.')) {
      if (pending_space) out.push_back(' ');
      pending_space = false;
      out.push_back(static_cast<char>(cp));
    }
    // anything else is dropped without acting as a separator
  }
  return out;
}

std::string lowercase(std::string_view text) {
  std::string out(text);
  for (char& c : out) c = detail::ascii_lower(c);
  return out;
}

// ---------------------------------------------------------------------------

SpellingCorrector::SpellingCorrector(std::unordered_map<std::string, std::uint64_t> counts)
    : counts_(std::move(counts)) {}

SpellingCorrector SpellingCorrector::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open dictionary " + path.string());
  std::unordered_map<std::string, std::uint64_t> counts;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view l = detail::trim(line);
    if (l.empty() || l.front() == '#') continue;
    auto parts = detail::split(l, '\t');
    std::uint64_t n = 0;
    if (parts.size() != 2 || detail::trim(parts[0]).empty() || !detail::parse_number(parts[1], n)) {
      throw Error(ErrorCode::kBadRow, path.string() + ":" + std::to_string(line_no) +
                                          ": expected word<TAB>count");
    }
    counts[lowercase(detail::trim(parts[0]))] += n;
  }
  return SpellingCorrector(std::move(counts));
}

std::vector<std::string> edits1(const std::string& word) {
  std::vector<std::string> out;
  const std::size_t n = word.size();
  out.reserve(54 * n + 25);
  for (std::size_t i = 0; i < n; ++i) out.push_back(word.substr(0, i) + word.substr(i + 1));
  for (std::size_t i = 0; i + 1 < n; ++i) {
    std::string t = word;
    std::swap(t[i], t[i + 1]);
    out.push_back(std::move(t));
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (char c = 'a'; c <= 'z'; ++c) {
      if (c == word[i]) continue;
      std::string t = word;
      t[i] = c;
      out.push_back(std::move(t));
    }
  }
  for (std::size_t i = 0; i <= n; ++i) {
    for (char c = 'a'; c <= 'z'; ++c) {
      out.push_back(word.substr(0, i) + c + word.substr(i));
    }
  }
  return out;
}

std::string SpellingCorrector::correct(const std::string& word) const {
  if (word.empty() || counts_.count(word)) return word;
  const std::string* best = nullptr;
  std::uint64_t best_count = 0;
  std::vector<std::string> candidates = edits1(word);
  for (const std::string& c : candidates) {
    auto it = counts_.find(c);
    if (it == counts_.end()) continue;
    if (best == nullptr || it->second > best_count ||
        (it->second == best_count && it->first < *best)) {
      best = &it->first;
      best_count = it->second;
    }
  }
  return best ? *best : word;
}

std::string normalize_case_and_spell(std::string_view text, const SpellingCorrector* speller) {
  std::string lowered = lowercase(text);
  if (speller == nullptr) return lowered;
  std::string out;
  out.reserve(lowered.size());
  std::size_t i = 0;
  while (i < lowered.size()) {
    if (!is_ascii_alnum(lowered[i])) {
      out.push_back(lowered[i++]);
      continue;
    }
    std::size_t start = i;
    bool alphabetic = true;
    while (i < lowered.size() && is_ascii_alnum(lowered[i])) {
      if (lowered[i] < 'a' || lowered[i] > 'z') alphabetic = false;
      ++i;
    }
    std::string token = lowered.substr(start, i - start);
    out += alphabetic ? speller->correct(token) : token;
  }
  return out;
}

// ---------------------------------------------------------------------------

CleanDocument primary_preprocess(const Document& doc, const PrimaryConfig& config) {
  if (!is_content_dataset(doc.dataset_no)) {
    throw Error(ErrorCode::kPrecondition,
                "primary preprocessing does not apply to dataset " + std::to_string(doc.dataset_no));
  }
  static const LanguageDetector kBuiltin = LanguageDetector::with_builtin_words();
  const LanguageDetector& detector = config.detector ? *config.detector : kBuiltin;

  CleanDocument out;
  out.doc_id = doc.doc_id;
  out.owner_id = doc.owner_id;
  out.dataset_no = doc.dataset_no;
  out.parent_doc_id = doc.parent_doc_id;

  TranslationResult translated =
      detect_and_translate(doc.text, detector, config.translator, doc.source.language);
  out.flagged_non_english = translated.flagged_non_english;
  MentionResult mentions = extract_mentions(translated.text);
  out.mentions = std::move(mentions.mentions);
  out.text = normalize_case_and_spell(strip_noise(mentions.text), config.speller);
  return out;
}

bool has_clean_alphabet(std::string_view text) {
  return std::all_of(text.begin(), text.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == ' ' || c == ',' || c == '.';
  });
}

}  // namespace egorank::textprep
