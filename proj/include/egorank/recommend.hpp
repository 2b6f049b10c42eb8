#pragma once

// Recommendation index of member documents against the ego's documents.
//
// For a key (ego) document and a target document, every pair of distinct
// words (one from each) with embeddings contributes
//
//   N = (count of the key word in the key doc + count of the target word in
//        the target doc) / cosine_distance(key word, target word)
//
// and the document index is R = (sum of N) * tfidf_cosine(key, target).
// In mean mode the sum is divided by the number of contributing pairs.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "egorank/corpus.hpp"
#include "egorank/labels.hpp"
#include "egorank/lexproc.hpp"
#include "egorank/simdex.hpp"

namespace egorank::recommend {

enum class Normalization { kRaw, kMean };

std::string_view to_string(Normalization n);
std::optional<Normalization> parse_normalization(std::string_view s);

struct PairScore {
  std::string word_mu;
  std::string word_tau;
  double n_value = 0.0;
};

// nullopt when either word has no (nonzero) vector.
std::optional<PairScore> pair_score(const std::string& w_mu, const std::string& w_tau,
                                    std::uint32_t bow_mu, std::uint32_t bow_tau,
                                    const simdex::WordVectorStore& vectors);

struct DocumentScore {
  std::string target_doc_id;
  std::string target_owner_id;
  std::string key_doc_id;
  double sum_n = 0.0;
  double ti_cs = 0.0;
  double r_plus = 0.0;
  std::size_t pair_count = 0;  // pairs that contributed to sum_n
};

// InertDocument if either document has no tokens.
DocumentScore document_index(const std::string& key_doc_id, const std::string& target_doc_id,
                             const simdex::SimilarityModels& models,
                             Normalization normalization = Normalization::kRaw);

struct ScoringConfig {
  std::string ego_id;
  Normalization normalization = Normalization::kRaw;
  unsigned threads = 1;
};

// Scores every member document of `bucket` against every ego document of
// the same bucket and keeps, per target, the best key document (ties go to
// the smaller key doc id). Output is ordered by target doc id.
// EmptyBucket with message "ego" or "members" when a side has no documents.
std::vector<DocumentScore> score_bucket(const lexproc::DocumentSet& set, const Bucket& bucket,
                                        const simdex::SimilarityModels& models,
                                        const ScoringConfig& config);

struct RankingEntry {
  std::string member_id;
  double member_score = 0.0;
  std::string best_doc_id;
};

struct MemberRanking {
  Bucket bucket;
  std::vector<RankingEntry> entries;  // rank i is entries[i - 1]
};

// member_score = max r_plus over the member's scored documents. Sorted by
// score descending, then member id ascending. Only ids in `members` are
// ranked; members without scored documents are left out.
MemberRanking rank_members(std::span<const DocumentScore> scores,
                           std::span<const InteractedMember> members, const Bucket& bucket = {});

}  // namespace egorank::recommend
