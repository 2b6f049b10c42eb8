#pragma once

// The three similarity models behind the recommendation index: a word
// vector store, a bag-of-words count table and a tf-idf model.
//
// Words are interned into a shared Vocabulary so that rows are sorted
// (term id, value) vectors; the string-keyed accessors are for callers and
// tests, the id-keyed ones for the scoring loop.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "egorank/lexproc.hpp"

namespace egorank::simdex {

inline constexpr double kDistanceFloor = 1e-6;

class WordVectorStore {
 public:
  WordVectorStore() = default;
  explicit WordVectorStore(std::size_t dim) : dim_(dim) {}

  // Text format: "vocab_size dim" header, then "word v1 ... v_dim" lines.
  // BadHeader, DimMismatch(row), DuplicateWord.
  static WordVectorStore load(const std::filesystem::path& path);
  static WordVectorStore read(std::istream& in, const std::string& source_name);
  void write(std::ostream& out) const;

  // DimMismatch on wrong length, DuplicateWord on repeats, BadParams on
  // non-finite components.
  void add(const std::string& word, std::span<const double> vec);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return words_.size(); }
  bool contains(const std::string& w) const { return index_.count(w) > 0; }
  // Empty span when absent.
  std::span<const double> vector(const std::string& w) const;
  std::span<const double> vector_at(std::size_t i) const {
    return {data_.data() + i * dim_, dim_};
  }
  double norm_at(std::size_t i) const { return norms_[i]; }
  std::optional<std::size_t> index_of(const std::string& w) const;
  const std::vector<std::string>& words() const { return words_; }

 private:
  std::size_t dim_ = 0;
  std::vector<std::string> words_;
  std::vector<double> data_;
  std::vector<double> norms_;
  std::unordered_map<std::string, std::size_t> index_;
};

// Cosine distance 1 - cos(v1, v2), floored at kDistanceFloor.
// DimMismatch, ZeroVector.
double pair_distance(std::span<const double> v1, std::span<const double> v2);

using TermId = std::uint32_t;

class Vocabulary {
 public:
  TermId intern(const std::string& w);
  std::optional<TermId> find(const std::string& w) const;
  const std::string& word(TermId id) const { return words_[id]; }
  std::size_t size() const { return words_.size(); }

 private:
  std::vector<std::string> words_;
  std::unordered_map<std::string, TermId> ids_;
};

template <typename T>
using SparseRow = std::vector<std::pair<TermId, T>>;  // sorted by TermId

class BoWTable {
 public:
  // One row per document of the set that is not flagged non-English.
  // Inert documents get an empty row.
  static BoWTable build(const lexproc::DocumentSet& set);

  bool has_row(const std::string& doc_id) const { return row_index_.count(doc_id) > 0; }
  const SparseRow<std::uint32_t>& row(const std::string& doc_id) const;
  // 0 if absent.
  std::uint32_t count(const std::string& doc_id, const std::string& word) const;
  std::uint64_t row_total(const std::string& doc_id) const;

  const Vocabulary& vocabulary() const { return vocab_; }
  const std::vector<std::string>& doc_ids() const { return doc_ids_; }
  const std::vector<SparseRow<std::uint32_t>>& rows() const { return rows_; }

  // Builds from explicit (doc id, tokens) pairs; used by tests and tools.
  static BoWTable from_tokens(std::span<const std::pair<std::string, std::vector<std::string>>> docs);

 private:
  void add_row(const std::string& doc_id, std::span<const std::string> tokens);

  Vocabulary vocab_;
  std::vector<std::string> doc_ids_;
  std::vector<SparseRow<std::uint32_t>> rows_;
  std::unordered_map<std::string, std::size_t> row_index_;
};

// tf = raw count, idf(w) = ln((1 + N) / (1 + df(w))) + 1 with N the number
// of non-empty rows; raw vector = tf * idf; length = L2 norm of the raw
// vector; the normalized vector is raw / length.
class TfIdfModel {
 public:
  // EmptyCorpus when every row is empty.
  static TfIdfModel build(const BoWTable& bow);

  double idf(const std::string& word) const;  // 0 for unseen words
  double idf_at(TermId id) const { return idf_[id]; }
  double length(const std::string& doc_id) const;
  double length_at(std::size_t row) const { return lengths_[row]; }
  const SparseRow<double>& raw_vector(const std::string& doc_id) const;
  const SparseRow<double>& normalized_vector(const std::string& doc_id) const;
  const SparseRow<double>& normalized_at(std::size_t row) const { return normalized_[row]; }
  std::size_t document_count() const { return n_docs_; }

  const BoWTable& bow() const { return *bow_; }

 private:
  const BoWTable* bow_ = nullptr;
  std::size_t n_docs_ = 0;
  std::vector<double> idf_;
  std::vector<SparseRow<double>> raw_;
  std::vector<SparseRow<double>> normalized_;
  std::vector<double> lengths_;
};

// Dot product of normalized tf-idf vectors. InertDocument for empty or
// unknown rows.
double tfidf_cosine(const std::string& doc_a, const std::string& doc_b, const TfIdfModel& model);
double sparse_dot(const SparseRow<double>& a, const SparseRow<double>& b);

struct SimilarityModels {
  const WordVectorStore* vectors = nullptr;
  const BoWTable* bow = nullptr;
  const TfIdfModel* tfidf = nullptr;
};

}  // namespace egorank::simdex
