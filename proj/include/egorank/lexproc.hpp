#pragma once

// Secondary preprocessing feeding the recommender: tokenization, stop-word
// removal, dictionary-validated lemmatization and Document-Set assembly.

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "egorank/labels.hpp"
#include "egorank/textprep.hpp"

namespace egorank::lexproc {

// Maximal [a-z0-9]+ runs; everything else separates tokens.
std::vector<std::string> tokenize(std::string_view text);

class StopList {
 public:
  StopList() = default;
  explicit StopList(std::unordered_set<std::string> words) : words_(std::move(words)) {}

  // One word per line; '#' starts a comment line. MissingStopList if the
  // file cannot be read.
  static StopList load(const std::filesystem::path& path);

  bool contains(const std::string& w) const { return words_.count(w) > 0; }
  std::size_t size() const { return words_.size(); }
  const std::unordered_set<std::string>& words() const { return words_; }

 private:
  std::unordered_set<std::string> words_;
};

std::vector<std::string> remove_stop_words(std::span<const std::string> tokens, const StopList& stop_list);

// Dictionary + rules lemmatizer without POS tagging.
//
// The dictionary file has "form<TAB>lemma" lines. A line whose form equals
// its lemma (or a line with a single word) declares a valid lemma; any
// other line is an irregular exception. Resolution order for a token:
//   1. a known lemma maps to itself
//   2. an exception maps to its lemma
//   3. suffix rules, nouns first (ies->y, es, s), then verbs (ing, ed with
//      e-restoration and consonant undoubling, ied->y), then comparatives
//      (er, est); the first candidate that is a known lemma wins
//   4. anything else is returned unchanged
// Because every output is either a known lemma or a token no rule can
// reduce, lemmatize(lemmatize(x)) == lemmatize(x).
class Lemmatizer {
 public:
  Lemmatizer() = default;
  Lemmatizer(std::unordered_set<std::string> lemmas,
             std::unordered_map<std::string, std::string> exceptions);

  // MissingLemmaDictionary if the file cannot be read.
  static Lemmatizer load(const std::filesystem::path& path);

  std::string lemmatize(const std::string& token) const;

  bool is_lemma(const std::string& w) const { return lemmas_.count(w) > 0; }
  const std::unordered_set<std::string>& lemmas() const { return lemmas_; }
  const std::unordered_map<std::string, std::string>& exceptions() const { return exceptions_; }

 private:
  std::unordered_set<std::string> lemmas_;
  std::unordered_map<std::string, std::string> exceptions_;
};

struct TokenizedDoc {
  std::string doc_id;
  std::string owner_id;
  int dataset_no = 1;
  std::optional<std::string> parent_doc_id;
  std::vector<std::string> tokens;  // lemmatized, stop words removed
  bool flagged_non_english = false;

  // Empty after preprocessing; never scored.
  bool inert() const { return tokens.empty(); }
  // Takes part in classification and scoring.
  bool eligible() const { return !flagged_non_english && !tokens.empty(); }

  friend bool operator==(const TokenizedDoc&, const TokenizedDoc&) = default;
};

struct DocumentSet {
  std::vector<TokenizedDoc> documents;
  std::map<std::string, std::vector<std::size_t>> owner_index;  // owner -> positions
  std::map<Bucket, std::vector<std::size_t>> bucket_index;      // filled by classify

  const TokenizedDoc* find(const std::string& doc_id) const;
  std::size_t position(const std::string& doc_id) const;  // npos if absent

  // Adds a document and indexes its owner.
  void add(TokenizedDoc doc);

 private:
  std::unordered_map<std::string, std::size_t> id_index_;
};

struct LexicalResources {
  const StopList* stop_list = nullptr;
  const Lemmatizer* lemmatizer = nullptr;
};

// tokenize -> remove_stop_words -> lemmatize for one text.
std::vector<std::string> process_text(std::string_view text, const LexicalResources& res);

// Throws MissingStopList / MissingLemmaDictionary when a resource is absent.
DocumentSet build_document_set(std::span<const textprep::CleanDocument> clean_docs,
                               const LexicalResources& res);

}  // namespace egorank::lexproc
