#pragma once

// Brute-force reference for the recommendation index. Recomputes counts,
// idf, tf-idf cosine and word distances from raw token lists with nested
// loops and std::map; shares no code with the library.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace egorank::oracle {

using Tokens = std::vector<std::string>;
using Embeddings = std::map<std::string, std::vector<double>>;

// "vocab_size dim" header then "word v1 .. v_dim" lines.
inline Embeddings parse_embeddings(std::istream& in) {
  Embeddings e;
  std::size_t n = 0, dim = 0;
  in >> n >> dim;
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    std::istringstream row(line);
    std::string w;
    if (!(row >> w)) continue;
    std::vector<double> v;
    double x;
    while (row >> x) v.push_back(x);
    e[w] = v;
  }
  return e;
}

inline Embeddings load_embeddings(const std::string& path) {
  std::ifstream in(path);
  return parse_embeddings(in);
}

inline std::map<std::string, int> counts(const Tokens& t) {
  std::map<std::string, int> c;
  for (const auto& w : t) ++c[w];
  return c;
}

// idf over the non-empty documents of `corpus`.
inline double idf(const std::string& w, const std::vector<Tokens>& corpus) {
  int n = 0, df = 0;
  for (const auto& d : corpus) {
    if (d.empty()) continue;
    ++n;
    if (std::find(d.begin(), d.end(), w) != d.end()) ++df;
  }
  return std::log((1.0 + n) / (1.0 + df)) + 1.0;
}

inline std::map<std::string, double> tfidf(const Tokens& doc, const std::vector<Tokens>& corpus) {
  std::map<std::string, double> v;
  for (const auto& [w, c] : counts(doc)) v[w] = c * idf(w, corpus);
  return v;
}

inline double tfidf_length(const Tokens& doc, const std::vector<Tokens>& corpus) {
  double s = 0;
  for (const auto& [w, x] : tfidf(doc, corpus)) s += x * x;
  return std::sqrt(s);
}

inline double tfidf_cosine(const Tokens& a, const Tokens& b, const std::vector<Tokens>& corpus) {
  auto va = tfidf(a, corpus), vb = tfidf(b, corpus);
  double dot = 0;
  for (const auto& [w, x] : va) {
    auto it = vb.find(w);
    if (it != vb.end()) dot += x * it->second;
  }
  double c = dot / (tfidf_length(a, corpus) * tfidf_length(b, corpus));
  return std::clamp(c, 0.0, 1.0);
}

inline double norm(const std::vector<double>& v) {
  double s = 0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

inline double distance(const std::vector<double>& a, const std::vector<double>& b) {
  double dot = 0;
  for (std::size_t i = 0; i < a.size(); ++i) dot += a[i] * b[i];
  return std::max(1e-6, 1.0 - dot / (norm(a) * norm(b)));
}

struct Index {
  double sum_n = 0;
  double ti_cs = 0;
  double r_plus = 0;
  int pairs = 0;
};

inline Index document_index(const Tokens& key, const Tokens& target, const std::vector<Tokens>& corpus,
                            const Embeddings& emb, bool mean) {
  Index r;
  for (const auto& [wk, ck] : counts(key)) {
    for (const auto& [wt, ct] : counts(target)) {
      auto ik = emb.find(wk), it = emb.find(wt);
      if (ik == emb.end() || it == emb.end()) continue;
      if (norm(ik->second) == 0 || norm(it->second) == 0) continue;
      r.sum_n += (ck + ct) / distance(ik->second, it->second);
      ++r.pairs;
    }
  }
  if (mean && r.pairs > 0) r.sum_n /= r.pairs;
  r.ti_cs = tfidf_cosine(key, target, corpus);
  r.r_plus = r.sum_n * r.ti_cs;
  return r;
}

struct Doc {
  std::string id;
  std::string owner;
  Tokens tokens;
};

struct Ranked {
  std::string member;
  double score;
  std::string best_doc;
};

// Scores every member doc against every ego doc (best key wins, ties to the
// smaller key id), takes each member's best doc and sorts.
inline std::vector<Ranked> rank(const std::vector<Doc>& bucket_docs, const std::string& ego,
                                const std::vector<Tokens>& corpus, const Embeddings& emb, bool mean) {
  std::vector<const Doc*> keys;
  for (const auto& d : bucket_docs) {
    if (d.owner == ego) keys.push_back(&d);
  }
  std::sort(keys.begin(), keys.end(), [](auto* a, auto* b) { return a->id < b->id; });
  std::map<std::string, Ranked> best;
  for (const auto& t : bucket_docs) {
    if (t.owner == ego) continue;
    double top = -1;
    for (const Doc* k : keys) {
      double r = document_index(k->tokens, t.tokens, corpus, emb, mean).r_plus;
      if (r > top) top = r;
    }
    auto it = best.find(t.owner);
    if (it == best.end() || top > it->second.score ||
        (top == it->second.score && t.id < it->second.best_doc)) {
      best[t.owner] = {t.owner, top, t.id};
    }
  }
  std::vector<Ranked> out;
  for (auto& [m, r] : best) out.push_back(r);
  std::sort(out.begin(), out.end(), [](const Ranked& a, const Ranked& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.member < b.member;
  });
  return out;
}

}  // namespace egorank::oracle
