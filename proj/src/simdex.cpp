#include "egorank/simdex.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>

#include "egorank/error.hpp"
#include "text_util.hpp"

namespace egorank::simdex {

namespace {

double l2_norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

std::vector<std::string_view> split_spaces(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    std::size_t start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t' && s[i] != '\r') ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// WordVectorStore

WordVectorStore WordVectorStore::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open embeddings " + path.string());
  return read(in, path.string());
}

WordVectorStore WordVectorStore::read(std::istream& in, const std::string& source_name) {
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::kBadHeader, source_name + ": empty file");
  auto header = split_spaces(line);
  std::size_t vocab = 0, dim = 0;
  if (header.size() != 2 || !detail::parse_number(header[0], vocab) ||
      !detail::parse_number(header[1], dim) || dim == 0) {
    throw Error(ErrorCode::kBadHeader, source_name + ": expected 'vocab_size dim', got '" + line + "'");
  }
  WordVectorStore store(dim);
  store.words_.reserve(vocab);
  store.data_.reserve(vocab * dim);
  std::vector<double> vec(dim);
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    auto parts = split_spaces(line);
    if (parts.empty()) continue;
    const std::string where = source_name + ":" + std::to_string(line_no);
    if (parts.size() != dim + 1) {
      throw Error(ErrorCode::kDimMismatch, where + ": expected " + std::to_string(dim) +
                                               " components, got " + std::to_string(parts.size() - 1));
    }
    for (std::size_t k = 0; k < dim; ++k) {
      if (!detail::parse_number(parts[k + 1], vec[k]) || !std::isfinite(vec[k])) {
        throw Error(ErrorCode::kDimMismatch, where + ": bad component '" + std::string(parts[k + 1]) + "'");
      }
    }
    std::string word(parts[0]);
    if (store.contains(word)) throw Error(ErrorCode::kDuplicateWord, where + ": " + word);
    store.add(word, vec);
  }
  if (store.size() != vocab) {
    throw Error(ErrorCode::kBadHeader, source_name + ": header declares " + std::to_string(vocab) +
                                           " words, file has " + std::to_string(store.size()));
  }
  return store;
}

void WordVectorStore::write(std::ostream& out) const {
  out << words_.size() << ' ' << dim_ << '\n';
  for (std::size_t i = 0; i < words_.size(); ++i) {
    out << words_[i];
    for (double x : vector_at(i)) out << ' ' << detail::format_double(x);
    out << '\n';
  }
}

void WordVectorStore::add(const std::string& word, std::span<const double> vec) {
  if (vec.size() != dim_) {
    throw Error(ErrorCode::kDimMismatch, word + ": expected " + std::to_string(dim_) +
                                             " components, got " + std::to_string(vec.size()));
  }
  for (double x : vec) {
    if (!std::isfinite(x)) throw Error(ErrorCode::kBadParams, word + ": non-finite component");
  }
  if (!index_.emplace(word, words_.size()).second) throw Error(ErrorCode::kDuplicateWord, word);
  words_.push_back(word);
  data_.insert(data_.end(), vec.begin(), vec.end());
  norms_.push_back(l2_norm(vec));
}

std::span<const double> WordVectorStore::vector(const std::string& w) const {
  auto it = index_.find(w);
  if (it == index_.end()) return {};
  return vector_at(it->second);
}

std::optional<std::size_t> WordVectorStore::index_of(const std::string& w) const {
  auto it = index_.find(w);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

double pair_distance(std::span<const double> v1, std::span<const double> v2) {
  if (v1.size() != v2.size()) {
    throw Error(ErrorCode::kDimMismatch, std::to_string(v1.size()) + " vs " + std::to_string(v2.size()));
  }
  const double n1 = l2_norm(v1);
  const double n2 = l2_norm(v2);
  if (n1 == 0.0 || n2 == 0.0) throw Error(ErrorCode::kZeroVector, "cosine distance of a zero vector");
  double dot = 0.0;
  for (std::size_t k = 0; k < v1.size(); ++k) dot += v1[k] * v2[k];
  return std::max(kDistanceFloor, 1.0 - dot / (n1 * n2));
}

// ---------------------------------------------------------------------------
// Vocabulary / BoW

TermId Vocabulary::intern(const std::string& w) {
  auto [it, inserted] = ids_.try_emplace(w, static_cast<TermId>(words_.size()));
  if (inserted) words_.push_back(w);
  return it->second;
}

std::optional<TermId> Vocabulary::find(const std::string& w) const {
  auto it = ids_.find(w);
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

void BoWTable::add_row(const std::string& doc_id, std::span<const std::string> tokens) {
  std::map<TermId, std::uint32_t> counts;
  for (const std::string& t : tokens) ++counts[*vocab_.find(t)];
  row_index_.emplace(doc_id, rows_.size());
  doc_ids_.push_back(doc_id);
  rows_.emplace_back(counts.begin(), counts.end());
}

BoWTable BoWTable::build(const lexproc::DocumentSet& set) {
  std::vector<std::pair<std::string, std::vector<std::string>>> docs;
  docs.reserve(set.documents.size());
  for (const lexproc::TokenizedDoc& d : set.documents) {
    if (d.flagged_non_english) continue;
    docs.emplace_back(d.doc_id, d.tokens);
  }
  return from_tokens(docs);
}

BoWTable BoWTable::from_tokens(std::span<const std::pair<std::string, std::vector<std::string>>> docs) {
  BoWTable table;
  // Term ids follow lexicographic word order so that every derived sum is
  // independent of document order.
  std::set<std::string> words;
  for (const auto& [id, tokens] : docs) words.insert(tokens.begin(), tokens.end());
  for (const std::string& w : words) table.vocab_.intern(w);
  for (const auto& [id, tokens] : docs) {
    if (table.row_index_.count(id)) throw Error(ErrorCode::kBadParams, "duplicate document id " + id);
    table.add_row(id, tokens);
  }
  return table;
}

const SparseRow<std::uint32_t>& BoWTable::row(const std::string& doc_id) const {
  auto it = row_index_.find(doc_id);
  if (it == row_index_.end()) throw Error(ErrorCode::kBadParams, "no BoW row for " + doc_id);
  return rows_[it->second];
}

std::uint32_t BoWTable::count(const std::string& doc_id, const std::string& word) const {
  auto term = vocab_.find(word);
  if (!term) return 0;
  const auto& r = row(doc_id);
  auto it = std::lower_bound(r.begin(), r.end(), *term,
                             [](const auto& e, TermId t) { return e.first < t; });
  return (it != r.end() && it->first == *term) ? it->second : 0;
}

std::uint64_t BoWTable::row_total(const std::string& doc_id) const {
  std::uint64_t n = 0;
  for (const auto& [t, c] : row(doc_id)) n += c;
  return n;
}

// ---------------------------------------------------------------------------
// tf-idf

TfIdfModel TfIdfModel::build(const BoWTable& bow) {
  TfIdfModel m;
  m.bow_ = &bow;
  std::vector<std::uint64_t> df(bow.vocabulary().size(), 0);
  for (const auto& row : bow.rows()) {
    if (row.empty()) continue;
    ++m.n_docs_;
    for (const auto& [t, c] : row) ++df[t];
  }
  if (m.n_docs_ == 0) throw Error(ErrorCode::kEmptyCorpus, "no non-inert documents for tf-idf");
  const double n = static_cast<double>(m.n_docs_);
  m.idf_.resize(df.size());
  for (std::size_t t = 0; t < df.size(); ++t) {
    m.idf_[t] = std::log((1.0 + n) / (1.0 + static_cast<double>(df[t]))) + 1.0;
  }
  m.raw_.reserve(bow.rows().size());
  m.normalized_.reserve(bow.rows().size());
  m.lengths_.reserve(bow.rows().size());
  for (const auto& row : bow.rows()) {
    SparseRow<double> raw;
    raw.reserve(row.size());
    double sq = 0.0;
    for (const auto& [t, c] : row) {
      const double w = static_cast<double>(c) * m.idf_[t];
      raw.emplace_back(t, w);
      sq += w * w;
    }
    const double len = std::sqrt(sq);
    SparseRow<double> norm = raw;
    if (len > 0.0) {
      for (auto& [t, w] : norm) w /= len;
    }
    m.raw_.push_back(std::move(raw));
    m.normalized_.push_back(std::move(norm));
    m.lengths_.push_back(len);
  }
  return m;
}

namespace {
std::size_t row_of(const BoWTable& bow, const std::string& doc_id) {
  return static_cast<std::size_t>(&bow.row(doc_id) - bow.rows().data());
}
}  // namespace

double TfIdfModel::idf(const std::string& word) const {
  auto t = bow_->vocabulary().find(word);
  return t ? idf_[*t] : 0.0;
}

double TfIdfModel::length(const std::string& doc_id) const { return lengths_[row_of(*bow_, doc_id)]; }

const SparseRow<double>& TfIdfModel::raw_vector(const std::string& doc_id) const {
  return raw_[row_of(*bow_, doc_id)];
}

const SparseRow<double>& TfIdfModel::normalized_vector(const std::string& doc_id) const {
  return normalized_[row_of(*bow_, doc_id)];
}

double sparse_dot(const SparseRow<double>& a, const SparseRow<double>& b) {
  double dot = 0.0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (i->first < j->first) {
      ++i;
    } else if (j->first < i->first) {
      ++j;
    } else {
      dot += i->second * j->second;
      ++i;
      ++j;
    }
  }
  return dot;
}

double tfidf_cosine(const std::string& doc_a, const std::string& doc_b, const TfIdfModel& model) {
  for (const std::string* id : {&doc_a, &doc_b}) {
    if (!model.bow().has_row(*id) || model.bow().row(*id).empty()) {
      throw Error(ErrorCode::kInertDocument, *id);
    }
  }
  const double c = sparse_dot(model.normalized_vector(doc_a), model.normalized_vector(doc_b));
  return std::clamp(c, 0.0, 1.0);
}

}  // namespace egorank::simdex
