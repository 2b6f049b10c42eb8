#pragma once

// Five-class content categorization and two-class lexicon/rule sentiment.
// Together they put every eligible document into one of ten buckets.

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "egorank/labels.hpp"
#include "egorank/lexproc.hpp"

namespace egorank::classify {

struct CategoryLabel {
  Category value = Category::kTechnology;
  std::array<double, 5> scores{};  // posterior per category, enum order

  double score(Category c) const { return scores[static_cast<std::size_t>(c)]; }
};

struct LabeledDoc {
  std::vector<std::string> tokens;
  Category category;
};

// Multinomial naive Bayes with add-one smoothing.
//
//   P(c)   = docs_c / docs
//   P(w|c) = (count(w, c) + 1) / (tokens_c + |V|)
//
// V is the training vocabulary; tokens outside it are ignored when scoring.
class CategoryClassifier {
 public:
  CategoryClassifier() = default;  // untrained

  // MissingCategory unless every category has at least one example.
  static CategoryClassifier train(std::span<const LabeledDoc> examples);

  bool trained() const { return trained_; }

  // Posterior over categories; argmax ties go to the earlier category.
  CategoryLabel predict(std::span<const std::string> tokens) const;

  double log_prior(Category c) const;
  double likelihood(const std::string& word, Category c) const;  // P(w|c)
  std::size_t vocabulary_size() const { return vocab_.size(); }
  std::uint64_t token_total(Category c) const { return totals_[static_cast<std::size_t>(c)]; }
  std::uint64_t doc_count(Category c) const { return docs_[static_cast<std::size_t>(c)]; }

 private:
  bool trained_ = false;
  std::array<std::uint64_t, 5> docs_{};
  std::array<std::uint64_t, 5> totals_{};
  std::unordered_map<std::string, std::array<std::uint64_t, 5>> counts_;
  std::unordered_set<std::string> vocab_;
};

// Training CSV with header "text,category". Texts go through
// lexproc::process_text after primary cleanup.
std::vector<LabeledDoc> load_labeled_corpus(const std::filesystem::path& path,
                                            const lexproc::LexicalResources& res);

// UntrainedModel, FlaggedDocument, or DependentDataset for datasets 2,3,7,8.
CategoryLabel classify_category(const lexproc::TokenizedDoc& doc, const CategoryClassifier& model);

// Copies the parent's label. OrphanDocument if the parent is unlabeled.
CategoryLabel inherit_category(const lexproc::TokenizedDoc& doc,
                               const std::map<std::string, CategoryLabel>& parent_labels);

// ---------------------------------------------------------------------------

struct SentimentResult {
  Sentiment clazz = Sentiment::kPositive;
  double compound = 0.0;
};

struct SentimentRules {
  double negation_scalar = -0.74;
  double booster_increment = 0.293;
  double normalization_alpha = 15.0;
  std::size_t negation_window = 3;
};

class SentimentLexicon {
 public:
  SentimentLexicon() = default;
  SentimentLexicon(std::unordered_map<std::string, double> valences,
                   std::unordered_set<std::string> negators,
                   std::unordered_set<std::string> boosters);

  // "word<TAB>valence" lexicon plus one-word-per-line negator and booster
  // lists. MissingLexicon if the lexicon file cannot be read.
  static SentimentLexicon load(const std::filesystem::path& lexicon,
                               const std::filesystem::path& negators,
                               const std::filesystem::path& boosters);

  bool empty() const { return valences_.empty(); }
  double valence(const std::string& w) const;  // 0 when absent
  bool is_negator(const std::string& w) const { return negators_.count(w) > 0; }
  bool is_booster(const std::string& w) const { return boosters_.count(w) > 0; }

  const std::unordered_map<std::string, double>& valences() const { return valences_; }
  const std::unordered_set<std::string>& negators() const { return negators_; }
  const std::unordered_set<std::string>& boosters() const { return boosters_; }

 private:
  std::unordered_map<std::string, double> valences_;
  std::unordered_set<std::string> negators_;
  std::unordered_set<std::string> boosters_;
};

// Sums rule-adjusted valences over [a-z0-9]+ words. For each word with a
// nonzero valence v: a booster directly before it adds
// booster_increment * sign(v); then a negator among the previous
// negation_window words of the same sentence multiplies by
// negation_scalar. A full stop ends a sentence. compound = S / sqrt(S^2 + alpha),
// clamped to [-1, 1]; compound >= 0 is Positive. MissingLexicon on an empty
// lexicon.
SentimentResult sentiment(std::string_view text, const SentimentLexicon& lexicon,
                          const SentimentRules& rules = {});

// Raw valence sum S before normalization.
double sentiment_sum(std::string_view text, const SentimentLexicon& lexicon,
                     const SentimentRules& rules = {});

// Places every eligible document (non-flagged, non-inert) that has both a
// category and a sentiment into its bucket, replacing any previous index.
// Returns the ids of eligible documents left unbucketed for lack of a label.
std::vector<std::string> assign_buckets(lexproc::DocumentSet& set,
                                        const std::map<std::string, CategoryLabel>& labels,
                                        const std::map<std::string, SentimentResult>& sentiments);

}  // namespace egorank::classify
