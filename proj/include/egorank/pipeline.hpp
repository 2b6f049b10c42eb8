#pragma once

// End-to-end orchestration behind the egorank CLI: ingest, rank, targets,
// run and synth. Every stage reads a PipelineConfig and writes its outputs
// under out_dir; identical configs and inputs give byte-identical files
// whatever the thread count.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "egorank/corpus.hpp"
#include "egorank/labels.hpp"
#include "egorank/lexproc.hpp"
#include "egorank/recommend.hpp"
#include "egorank/targets.hpp"

namespace egorank::pipeline {

inline constexpr std::string_view kToolVersion = "0.1.0";

struct PipelineConfig {
  // Corpus.
  std::string platform = "twitter";
  std::string ego_id = "ego";
  std::filesystem::path corpus_root;
  std::filesystem::path dataset5;     // empty: <corpus_root>/dataset5.csv
  std::filesystem::path ego_dir;      // empty: <corpus_root>/ego
  std::filesystem::path members_dir;  // empty: <corpus_root>/members
  std::string since;                  // "YYYY-MM-DDTHH:MM:SSZ" or empty
  std::string until;

  // Resources. Empty paths resolve to the default file name in data_dir.
  std::filesystem::path data_dir = "data";
  std::filesystem::path stop_words;
  std::filesystem::path lemmas;
  std::filesystem::path lexicon;
  std::filesystem::path negators;
  std::filesystem::path boosters;
  std::filesystem::path seed_corpus;
  std::filesystem::path topic_profiles;
  std::filesystem::path filler_words;
  std::filesystem::path embeddings;  // empty: <corpus_root>/embeddings.txt
  std::filesystem::path spelling;    // empty: spelling correction off

  // Ranking and selection.
  std::string bucket = "all";  // "all" or "<Category>/<Sentiment>"
  std::size_t n_it = targets::kMinTargets;
  std::uint64_t threshold = targets::kDefaultThreshold;
  std::string normalization = "raw";
  bool allow_small = false;

  // Synthetic generation.
  std::uint64_t seed = 1;
  std::size_t members = 60;
  std::size_t docs_per_member = 6;
  std::size_t ego_docs = 12;
  std::size_t planted = 10;
  std::size_t mega_members = 2;
  std::size_t groups = 3;
  std::size_t foreign_docs = 4;
  std::size_t min_tokens = 8;
  std::size_t max_tokens = 20;
  std::string ego_bucket = "Politics/Positive";
  std::size_t embedding_dim = 50;
  std::size_t embedding_words = 0;  // pad the embedding file to this many words
  std::size_t seed_docs_per_category = 40;

  // Execution; neither takes part in the config hash.
  unsigned threads = 1;
  std::filesystem::path out_dir = "out";
};

enum class Stage { kIngest, kRank, kTargets, kRun, kSynth };

// Resolved resource path (explicit value or data_dir default).
std::filesystem::path resource_path(const PipelineConfig& config, std::string_view name);

// BadConfig listing every problem: unparsable values, n_it == 0, missing
// input files for `stage`.
void validate(const PipelineConfig& config, Stage stage);

// FNV-1a 64 over every field except threads and out_dir, as 16 hex digits.
std::string config_hash(const PipelineConfig& config);

// Buckets selected by config.bucket. BadConfig if unparsable.
std::vector<Bucket> selected_buckets(const PipelineConfig& config);

struct IngestSummary {
  std::map<int, std::size_t> dataset_counts;  // 1..9; 5 counts Dataset 5 rows
  std::size_t documents = 0;
  std::size_t flagged_non_english = 0;
  std::size_t mentions_found = 0;
  std::size_t mentions_merged = 0;  // members added from mentions only
  std::size_t members = 0;
  std::vector<std::string> warnings;
  std::filesystem::path bundle_path;
  std::filesystem::path report_path;
};

struct BucketRanking {
  recommend::MemberRanking ranking;
  std::vector<recommend::DocumentScore> scores;
  std::vector<std::string> warnings;
  std::filesystem::path csv_path;
  std::filesystem::path json_path;
};

struct RankSummary {
  std::vector<BucketRanking> buckets;
  std::size_t eligible_members = 0;
  std::vector<std::string> warnings;
};

struct TargetsSummary {
  std::vector<targets::TargetSelection> selections;
  std::vector<std::pair<Bucket, std::string>> skipped;  // bucket, reason
  std::filesystem::path report_path;
};

struct SynthSummary {
  std::filesystem::path corpus_root;
  std::filesystem::path embeddings;
  std::filesystem::path seed_corpus;
  std::filesystem::path truth;
  std::size_t documents = 0;
};

// Loads and primary-preprocesses the corpus; writes bundle.json and
// ingest_report.json.
IngestSummary ingest(const PipelineConfig& config);

// Documents of bundle.json after secondary preprocessing, classification
// and bucketing, plus the members that can be ranked.
struct PreparedCorpus {
  std::string ego_id;
  lexproc::DocumentSet documents;
  std::vector<InteractedMember> eligible;  // Groups and the ego removed
  std::vector<std::string> warnings;
};
PreparedCorpus prepare(const PipelineConfig& config);

// Reads bundle.json, classifies, scores and writes one CSV and one JSON
// ranking per selected bucket (rank_<category>_<sentiment>.{csv,json}).
RankSummary rank(const PipelineConfig& config);

// Ranks, then writes targets.json and checks it with
// validate_targets_report(). With bucket = "all", buckets whose ranking is
// shorter than n_it are skipped; a single requested bucket propagates
// RankingTooSmall.
TargetsSummary select(const PipelineConfig& config);

struct RunSummary {
  IngestSummary ingest;
  RankSummary rank;
  TargetsSummary targets;
};
RunSummary run(const PipelineConfig& config);

// Writes a synthetic corpus to corpus_root, plus embeddings, a labeled seed
// corpus and truth.json (hidden bucket labels, planted and mega members).
SynthSummary synth(const PipelineConfig& config);

// Recounts a written targets report: |selected| = n_it,
// |effective| = n_it - D_it, D_it = |defaults_removed|, and effective and
// defaults_removed split selected in order. Returns the violations.
std::vector<std::string> validate_targets_report(const std::filesystem::path& path);

}  // namespace egorank::pipeline
