#include "egorank/recommend.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <thread>
#include <unordered_set>

#include "egorank/error.hpp"
#include "text_util.hpp"

namespace egorank::recommend {

namespace {

// A BoW row resolved against the vector store once, so the pair loop only
// touches contiguous data.
struct PreparedWord {
  std::int64_t vector = -1;  // -1: no usable embedding
  double count = 0.0;
};

std::vector<PreparedWord> prepare(const simdex::SparseRow<std::uint32_t>& row,
                                  const simdex::Vocabulary& vocab,
                                  const simdex::WordVectorStore& vectors) {
  std::vector<PreparedWord> out;
  out.reserve(row.size());
  for (const auto& [term, count] : row) {
    PreparedWord p;
    p.count = static_cast<double>(count);
    if (auto idx = vectors.index_of(vocab.word(term)); idx && vectors.norm_at(*idx) > 0.0) {
      p.vector = static_cast<std::int64_t>(*idx);
    }
    out.push_back(p);
  }
  return out;
}

// Same arithmetic as simdex::pair_distance, with the norms precomputed.
double distance(const simdex::WordVectorStore& vectors, std::size_t a, std::size_t b) {
  const auto va = vectors.vector_at(a);
  const auto vb = vectors.vector_at(b);
  double dot = 0.0;
  for (std::size_t k = 0; k < va.size(); ++k) dot += va[k] * vb[k];
  return std::max(simdex::kDistanceFloor, 1.0 - dot / (vectors.norm_at(a) * vectors.norm_at(b)));
}

struct PairSum {
  double sum = 0.0;
  std::size_t pairs = 0;
};

PairSum sum_pairs(const std::vector<PreparedWord>& key, const std::vector<PreparedWord>& target,
                  const simdex::WordVectorStore& vectors) {
  PairSum s;
  for (const PreparedWord& k : key) {
    if (k.vector < 0) continue;
    for (const PreparedWord& t : target) {
      if (t.vector < 0) continue;
      s.sum += (k.count + t.count) /
               distance(vectors, static_cast<std::size_t>(k.vector), static_cast<std::size_t>(t.vector));
      ++s.pairs;
    }
  }
  return s;
}

DocumentScore finish(const std::string& key_id, const std::string& target_id, PairSum s,
                     double ti_cs, Normalization normalization) {
  DocumentScore out;
  out.key_doc_id = key_id;
  out.target_doc_id = target_id;
  out.pair_count = s.pairs;
  out.sum_n = s.sum;
  if (normalization == Normalization::kMean && s.pairs > 0) {
    out.sum_n = s.sum / static_cast<double>(s.pairs);
  }
  out.ti_cs = ti_cs;
  out.r_plus = out.sum_n * out.ti_cs;
  return out;
}

void require_models(const simdex::SimilarityModels& m) {
  if (!m.vectors || !m.bow || !m.tfidf) {
    throw Error(ErrorCode::kBadParams, "similarity models are incomplete");
  }
}

}  // namespace

std::string_view to_string(Normalization n) { return n == Normalization::kRaw ? "raw" : "mean"; }

std::optional<Normalization> parse_normalization(std::string_view s) {
  if (detail::iequals(s, "raw")) return Normalization::kRaw;
  if (detail::iequals(s, "mean")) return Normalization::kMean;
  return std::nullopt;
}

std::optional<PairScore> pair_score(const std::string& w_mu, const std::string& w_tau,
                                    std::uint32_t bow_mu, std::uint32_t bow_tau,
                                    const simdex::WordVectorStore& vectors) {
  auto a = vectors.index_of(w_mu);
  auto b = vectors.index_of(w_tau);
  if (!a || !b || vectors.norm_at(*a) == 0.0 || vectors.norm_at(*b) == 0.0) return std::nullopt;
  const double d = simdex::pair_distance(vectors.vector_at(*a), vectors.vector_at(*b));
  return PairScore{w_mu, w_tau, (static_cast<double>(bow_mu) + static_cast<double>(bow_tau)) / d};
}

DocumentScore document_index(const std::string& key_doc_id, const std::string& target_doc_id,
                             const simdex::SimilarityModels& models, Normalization normalization) {
  require_models(models);
  for (const std::string* id : {&key_doc_id, &target_doc_id}) {
    if (!models.bow->has_row(*id) || models.bow->row(*id).empty()) {
      throw Error(ErrorCode::kInertDocument, *id);
    }
  }
  const auto& vocab = models.bow->vocabulary();
  auto key = prepare(models.bow->row(key_doc_id), vocab, *models.vectors);
  auto target = prepare(models.bow->row(target_doc_id), vocab, *models.vectors);
  const double ti_cs = simdex::tfidf_cosine(key_doc_id, target_doc_id, *models.tfidf);
  return finish(key_doc_id, target_doc_id, sum_pairs(key, target, *models.vectors), ti_cs, normalization);
}

std::vector<DocumentScore> score_bucket(const lexproc::DocumentSet& set, const Bucket& bucket,
                                        const simdex::SimilarityModels& models,
                                        const ScoringConfig& config) {
  require_models(models);
  std::vector<const lexproc::TokenizedDoc*> keys;
  std::vector<const lexproc::TokenizedDoc*> targets;
  if (auto it = set.bucket_index.find(bucket); it != set.bucket_index.end()) {
    for (std::size_t pos : it->second) {
      const lexproc::TokenizedDoc& d = set.documents[pos];
      if (!d.eligible()) continue;
      (d.owner_id == config.ego_id ? keys : targets).push_back(&d);
    }
  }
  if (keys.empty()) throw Error(ErrorCode::kEmptyBucket, "ego has no documents in " + to_string(bucket));
  if (targets.empty()) {
    throw Error(ErrorCode::kEmptyBucket, "members have no documents in " + to_string(bucket));
  }
  const auto by_id = [](const lexproc::TokenizedDoc* a, const lexproc::TokenizedDoc* b) {
    return a->doc_id < b->doc_id;
  };
  std::sort(keys.begin(), keys.end(), by_id);
  std::sort(targets.begin(), targets.end(), by_id);

  const auto& vocab = models.bow->vocabulary();
  const auto& vectors = *models.vectors;
  const auto& tfidf = *models.tfidf;
  struct Prepared {
    std::vector<PreparedWord> words;
    const simdex::SparseRow<double>* tfidf;
  };
  auto prepare_doc = [&](const lexproc::TokenizedDoc* d) {
    return Prepared{prepare(models.bow->row(d->doc_id), vocab, vectors),
                    &tfidf.normalized_vector(d->doc_id)};
  };
  std::vector<Prepared> key_prep;
  key_prep.reserve(keys.size());
  for (auto* k : keys) key_prep.push_back(prepare_doc(k));

  std::vector<DocumentScore> out(targets.size());
  auto score_target = [&](std::size_t ti) {
    const Prepared t = prepare_doc(targets[ti]);
    DocumentScore best;
    bool have = false;
    for (std::size_t ki = 0; ki < keys.size(); ++ki) {
      const double ti_cs = std::clamp(simdex::sparse_dot(*key_prep[ki].tfidf, *t.tfidf), 0.0, 1.0);
      DocumentScore s = finish(keys[ki]->doc_id, targets[ti]->doc_id,
                               sum_pairs(key_prep[ki].words, t.words, vectors), ti_cs,
                               config.normalization);
      if (!have || s.r_plus > best.r_plus) {
        best = std::move(s);
        have = true;
      }
    }
    best.target_owner_id = targets[ti]->owner_id;
    out[ti] = std::move(best);
  };

  const unsigned threads = std::max(1u, std::min<unsigned>(config.threads, targets.size()));
  if (threads == 1) {
    for (std::size_t i = 0; i < targets.size(); ++i) score_target(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < targets.size(); i = next++) score_target(i);
      });
    }
  }
  return out;
}

MemberRanking rank_members(std::span<const DocumentScore> scores,
                           std::span<const InteractedMember> members, const Bucket& bucket) {
  std::unordered_set<std::string> allowed;
  for (const InteractedMember& m : members) allowed.insert(m.member_id);
  std::map<std::string, RankingEntry> best;
  for (const DocumentScore& s : scores) {
    if (!allowed.count(s.target_owner_id)) continue;
    auto [it, inserted] = best.try_emplace(s.target_owner_id,
                                           RankingEntry{s.target_owner_id, s.r_plus, s.target_doc_id});
    if (inserted) continue;
    RankingEntry& e = it->second;
    if (s.r_plus > e.member_score || (s.r_plus == e.member_score && s.target_doc_id < e.best_doc_id)) {
      e.member_score = s.r_plus;
      e.best_doc_id = s.target_doc_id;
    }
  }
  MemberRanking ranking;
  ranking.bucket = bucket;
  ranking.entries.reserve(best.size());
  for (auto& [id, e] : best) ranking.entries.push_back(std::move(e));
  std::stable_sort(ranking.entries.begin(), ranking.entries.end(),
                   [](const RankingEntry& a, const RankingEntry& b) {
                     if (a.member_score != b.member_score) return a.member_score > b.member_score;
                     return a.member_id < b.member_id;
                   });
  return ranking;
}

}  // namespace egorank::recommend
