#include "egorank/classify.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include "egorank/corpus.hpp"
#include "egorank/csv.hpp"
#include "egorank/error.hpp"
#include "egorank/textprep.hpp"
#include "text_util.hpp"

namespace egorank::classify {

namespace {

constexpr std::size_t idx(Category c) { return static_cast<std::size_t>(c); }

std::unordered_set<std::string> load_word_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  std::unordered_set<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    std::string_view w = detail::trim(line);
    if (w.empty() || w.front() == '#') continue;
    out.insert(textprep::lowercase(w));
  }
  return out;
}

}  // namespace

CategoryClassifier CategoryClassifier::train(std::span<const LabeledDoc> examples) {
  CategoryClassifier m;
  for (const LabeledDoc& ex : examples) {
    const std::size_t c = idx(ex.category);
    ++m.docs_[c];
    for (const std::string& w : ex.tokens) {
      ++m.counts_[w][c];
      ++m.totals_[c];
      m.vocab_.insert(w);
    }
  }
  for (Category c : kAllCategories) {
    if (m.docs_[idx(c)] == 0) throw Error(ErrorCode::kMissingCategory, std::string(to_string(c)));
  }
  m.trained_ = true;
  return m;
}

double CategoryClassifier::log_prior(Category c) const {
  std::uint64_t total = 0;
  for (auto d : docs_) total += d;
  return std::log(static_cast<double>(docs_[idx(c)]) / static_cast<double>(total));
}

double CategoryClassifier::likelihood(const std::string& word, Category c) const {
  std::uint64_t count = 0;
  if (auto it = counts_.find(word); it != counts_.end()) count = it->second[idx(c)];
  return (static_cast<double>(count) + 1.0) /
         (static_cast<double>(totals_[idx(c)]) + static_cast<double>(vocab_.size()));
}

CategoryLabel CategoryClassifier::predict(std::span<const std::string> tokens) const {
  if (!trained_) throw Error(ErrorCode::kUntrainedModel, "category classifier has not been trained");
  std::array<double, 5> logp{};
  for (Category c : kAllCategories) logp[idx(c)] = log_prior(c);
  const double v = static_cast<double>(vocab_.size());
  for (const std::string& w : tokens) {
    auto it = counts_.find(w);
    if (it == counts_.end()) continue;
    for (Category c : kAllCategories) {
      logp[idx(c)] += std::log((static_cast<double>(it->second[idx(c)]) + 1.0) /
                               (static_cast<double>(totals_[idx(c)]) + v));
    }
  }
  CategoryLabel label;
  std::size_t best = 0;
  for (std::size_t i = 1; i < logp.size(); ++i) {
    if (logp[i] > logp[best]) best = i;
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < logp.size(); ++i) {
    label.scores[i] = std::exp(logp[i] - logp[best]);
    sum += label.scores[i];
  }
  for (double& s : label.scores) s /= sum;
  label.value = static_cast<Category>(best);
  return label;
}

std::vector<LabeledDoc> load_labeled_corpus(const std::filesystem::path& path,
                                            const lexproc::LexicalResources& res) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open labeled corpus " + path.string());
  csv::Reader reader(in);
  std::vector<std::string> row;
  if (!reader.next(row)) throw Error(ErrorCode::kEmptyFile, path.string());
  std::size_t text_col = row.size(), cat_col = row.size();
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (detail::trim(row[i]) == "text") text_col = i;
    if (detail::trim(row[i]) == "category") cat_col = i;
  }
  if (text_col == row.size()) throw Error(ErrorCode::kMissingColumn, "text (in " + path.string() + ")");
  if (cat_col == row.size()) throw Error(ErrorCode::kMissingColumn, "category (in " + path.string() + ")");
  const std::size_t width = row.size();

  std::vector<LabeledDoc> out;
  while (reader.next(row)) {
    const std::string where = path.string() + ":" + std::to_string(reader.line());
    if (row.size() != width) throw Error(ErrorCode::kBadRow, where + ": wrong field count");
    auto cat = parse_category(row[cat_col]);
    if (!cat) throw Error(ErrorCode::kBadRow, where + ": unknown category '" + row[cat_col] + "'");
    std::string clean = textprep::lowercase(textprep::strip_noise(row[text_col]));
    out.push_back({lexproc::process_text(clean, res), *cat});
  }
  return out;
}

CategoryLabel classify_category(const lexproc::TokenizedDoc& doc, const CategoryClassifier& model) {
  if (!model.trained()) throw Error(ErrorCode::kUntrainedModel, "category classifier has not been trained");
  if (doc.flagged_non_english) {
    throw Error(ErrorCode::kFlaggedDocument, doc.doc_id + " is flagged non-English");
  }
  if (is_dependent_dataset(doc.dataset_no)) {
    throw Error(ErrorCode::kDependentDataset,
                doc.doc_id + " belongs to dependent dataset " + std::to_string(doc.dataset_no));
  }
  return model.predict(doc.tokens);
}

CategoryLabel inherit_category(const lexproc::TokenizedDoc& doc,
                               const std::map<std::string, CategoryLabel>& parent_labels) {
  if (!doc.parent_doc_id) throw Error(ErrorCode::kOrphanDocument, doc.doc_id + " has no parent");
  auto it = parent_labels.find(*doc.parent_doc_id);
  if (it == parent_labels.end()) {
    throw Error(ErrorCode::kOrphanDocument,
                doc.doc_id + ": parent " + *doc.parent_doc_id + " has no category");
  }
  return it->second;
}

// ---------------------------------------------------------------------------

SentimentLexicon::SentimentLexicon(std::unordered_map<std::string, double> valences,
                                   std::unordered_set<std::string> negators,
                                   std::unordered_set<std::string> boosters)
    : valences_(std::move(valences)), negators_(std::move(negators)), boosters_(std::move(boosters)) {}

SentimentLexicon SentimentLexicon::load(const std::filesystem::path& lexicon,
                                        const std::filesystem::path& negators,
                                        const std::filesystem::path& boosters) {
  std::ifstream in(lexicon);
  if (!in) throw Error(ErrorCode::kMissingLexicon, lexicon.string());
  std::unordered_map<std::string, double> valences;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view l = detail::trim(line);
    if (l.empty() || l.front() == '#') continue;
    auto parts = detail::split(l, '\t');
    double v = 0.0;
    if (parts.size() < 2 || !detail::parse_number(parts[1], v) || v < -4.0 || v > 4.0) {
      throw Error(ErrorCode::kBadRow, lexicon.string() + ":" + std::to_string(line_no) +
                                          ": expected word<TAB>valence in [-4, 4]");
    }
    valences[textprep::lowercase(detail::trim(parts[0]))] = v;
  }
  if (valences.empty()) throw Error(ErrorCode::kMissingLexicon, lexicon.string() + " is empty");
  return SentimentLexicon(std::move(valences), load_word_list(negators), load_word_list(boosters));
}

double SentimentLexicon::valence(const std::string& w) const {
  auto it = valences_.find(w);
  return it == valences_.end() ? 0.0 : it->second;
}

double sentiment_sum(std::string_view text, const SentimentLexicon& lexicon, const SentimentRules& rules) {
  if (lexicon.empty()) throw Error(ErrorCode::kMissingLexicon, "sentiment lexicon is empty");
  // Split into sentences on '.', then words on anything outside [a-z0-9].
  double sum = 0.0;
  std::string lowered = textprep::lowercase(text);
  for (std::string_view sentence : detail::split(lowered, '.')) {
    std::vector<std::string> words = lexproc::tokenize(sentence);
    for (std::size_t i = 0; i < words.size(); ++i) {
      double v = lexicon.valence(words[i]);
      if (v == 0.0) continue;
      if (i >= 1 && lexicon.is_booster(words[i - 1])) {
        v += v > 0 ? rules.booster_increment : -rules.booster_increment;
      }
      const std::size_t lo = i >= rules.negation_window ? i - rules.negation_window : 0;
      for (std::size_t j = lo; j < i; ++j) {
        if (lexicon.is_negator(words[j])) {
          v *= rules.negation_scalar;
          break;
        }
      }
      sum += v;
    }
  }
  return sum;
}

SentimentResult sentiment(std::string_view text, const SentimentLexicon& lexicon, const SentimentRules& rules) {
  const double s = sentiment_sum(text, lexicon, rules);
  SentimentResult r;
  r.compound = std::clamp(s / std::sqrt(s * s + rules.normalization_alpha), -1.0, 1.0);
  r.clazz = r.compound >= 0.0 ? Sentiment::kPositive : Sentiment::kNegative;
  return r;
}

std::vector<std::string> assign_buckets(lexproc::DocumentSet& set,
                                        const std::map<std::string, CategoryLabel>& labels,
                                        const std::map<std::string, SentimentResult>& sentiments) {
  std::vector<std::string> unlabeled;
  set.bucket_index.clear();
  for (std::size_t i = 0; i < set.documents.size(); ++i) {
    const lexproc::TokenizedDoc& d = set.documents[i];
    if (!d.eligible()) continue;
    auto l = labels.find(d.doc_id);
    auto s = sentiments.find(d.doc_id);
    if (l == labels.end() || s == sentiments.end()) {
      unlabeled.push_back(d.doc_id);
      continue;
    }
    set.bucket_index[Bucket{l->second.value, s->second.clazz}].push_back(i);
  }
  return unlabeled;
}

}  // namespace egorank::classify
