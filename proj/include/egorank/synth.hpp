#pragma once

// Seeded synthetic ego networks for tests, demos and benchmarks.
//
// Every document is written for a hidden (category, sentiment) bucket drawn
// from per-category word-weight profiles. Some members are "planted": most
// of their documents share the ego's dominant bucket and focus words. Some
// planted members are "mega" members with more than 5000 connections.

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "egorank/corpus.hpp"
#include "egorank/labels.hpp"
#include "egorank/simdex.hpp"

namespace egorank::synth {

using WeightedWords = std::vector<std::pair<std::string, double>>;
using TopicProfiles = std::map<Category, WeightedWords>;

// "category<TAB>word[<TAB>weight]" lines; weight defaults to 1. BadRow on
// unknown categories or nonpositive weights, MissingCategory when a
// category has no words.
TopicProfiles load_topic_profiles(const std::filesystem::path& path);

struct SynthParams {
  std::uint64_t seed = 1;
  Platform platform = Platform::kTwitter;
  std::string ego_id = "ego";

  std::size_t members = 60;
  std::size_t docs_per_member = 6;
  std::size_t ego_docs = 12;

  TopicProfiles topic_profiles;
  std::vector<std::string> vocab;           // filler words mixed into every text
  std::vector<std::string> positive_words;  // sentiment markers
  std::vector<std::string> negative_words;

  Bucket ego_bucket{Category::kPolitics, Sentiment::kPositive};
  double ego_focus = 0.75;        // share of ego docs in ego_bucket
  std::size_t focus_words = 6;    // words of the ego category the ego favours
  std::size_t planted = 10;       // members sharing the ego's profile
  double planted_focus = 0.8;     // share of planted members' docs in ego_bucket
  double background_rate = 0.15;  // share of other members' docs in ego_bucket
  std::size_t mega_members = 2;   // planted members with > 5000 connections
  std::size_t groups = 3;
  std::size_t min_tokens = 8;
  std::size_t max_tokens = 20;
  double noise = 0.3;             // chance of emoji, shouting, mentions, ...
  std::size_t foreign_docs = 4;   // member docs written in another language
};

struct SyntheticCorpus {
  Corpus corpus;
  std::map<std::string, Bucket> truth;  // doc_id -> intended bucket
  std::vector<std::string> planted;     // member ids, sorted
  std::vector<std::string> mega;        // member ids, sorted
  std::vector<std::string> groups;      // member ids, sorted
  std::vector<std::string> foreign;     // doc ids, sorted
  std::vector<std::string> focus_words;
};

// BadParams if members, docs_per_member or ego_docs is zero, a word list is
// empty, a category profile is missing, or the planted/mega/group counts do
// not fit in `members`.
SyntheticCorpus generate_synthetic_corpus(const SynthParams& params);

// Labeled training texts ("text,category" rows), `per_category` per class.
std::vector<std::pair<std::string, Category>> generate_seed_corpus(const SynthParams& params,
                                                                   std::size_t per_category);
void write_seed_corpus(const std::filesystem::path& path,
                       const std::vector<std::pair<std::string, Category>>& rows);

// Clustered embeddings: one centre per category and per sentiment polarity,
// a tighter sub-centre for the focus words, and Gaussian filler vectors.
// Words named pad000001, ... are appended until `total_words` is reached.
simdex::WordVectorStore generate_word_vectors(const SynthParams& params,
                                              const std::vector<std::string>& focus_words,
                                              std::size_t dim, std::size_t total_words);

}  // namespace egorank::synth
