#include "egorank/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "egorank/classify.hpp"
#include "egorank/corpus.hpp"
#include "egorank/csv.hpp"
#include "egorank/error.hpp"
#include "egorank/lexproc.hpp"
#include "egorank/simdex.hpp"
#include "egorank/synth.hpp"
#include "egorank/textprep.hpp"
#include "text_util.hpp"

namespace egorank::pipeline {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

const std::map<std::string_view, std::string_view>& default_resource_names() {
  static const std::map<std::string_view, std::string_view> names = {
      {"stop_words", "stop_words.txt"},          {"lemmas", "lemmas.tsv"},
      {"lexicon", "sentiment_lexicon.tsv"},      {"negators", "negators.txt"},
      {"boosters", "boosters.txt"},              {"seed_corpus", "seed_corpus.csv"},
      {"topic_profiles", "topic_profiles.tsv"},  {"filler_words", "filler_words.txt"},
  };
  return names;
}

const fs::path& explicit_resource(const PipelineConfig& c, std::string_view name) {
  static const fs::path kEmpty;
  if (name == "stop_words") return c.stop_words;
  if (name == "lemmas") return c.lemmas;
  if (name == "lexicon") return c.lexicon;
  if (name == "negators") return c.negators;
  if (name == "boosters") return c.boosters;
  if (name == "seed_corpus") return c.seed_corpus;
  if (name == "topic_profiles") return c.topic_profiles;
  if (name == "filler_words") return c.filler_words;
  if (name == "embeddings") return c.embeddings;
  return kEmpty;
}

std::optional<Bucket> parse_bucket(std::string_view s) {
  auto parts = detail::split(s, '/');
  if (parts.size() != 2) return std::nullopt;
  auto c = parse_category(detail::trim(parts[0]));
  auto v = parse_sentiment(detail::trim(parts[1]));
  if (!c || !v) return std::nullopt;
  return Bucket{*c, *v};
}

std::string bucket_file_stem(const Bucket& b) {
  std::string s = "rank_" + std::string(to_string(b.category)) + "_" + std::string(to_string(b.sentiment));
  for (char& c : s) c = detail::ascii_lower(c);
  return s;
}

void write_file(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path.string());
  out << content;
  if (!out) throw Error(ErrorCode::kIoError, "write failed for " + path.string());
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> read_word_list(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    std::string_view w = detail::trim(line);
    if (!w.empty() && w.front() != '#') out.emplace_back(w);
  }
  return out;
}

Json provenance(const PipelineConfig& config) {
  Json j;
  j["tool_version"] = std::string(kToolVersion);
  j["config_hash"] = config_hash(config);
  return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json to_json(const std::vector<std::string>& v) {
  Json a = Json::array();
  for (const auto& s : v) a.push_back(s);
  return a;
}

TimeWindow window_of(const PipelineConfig& c) {
  TimeWindow w;
  if (!c.since.empty()) w.since = *parse_timestamp(c.since);
  if (!c.until.empty()) w.until = *parse_timestamp(c.until);
  return w;
}

// ---------------------------------------------------------------------------
// Bundle: the normalized corpus handed from ingest to rank.

struct Bundle {
  Platform platform = Platform::kTwitter;
  std::string ego_id;
  std::vector<InteractedMember> members;
  std::vector<textprep::CleanDocument> documents;
};

Json member_json(const InteractedMember& m) {
  Json j;
  j["member_id"] = m.member_id;
  j["display_name"] = m.display_name;
  j["kind"] = std::string(to_string(m.kind));
  Json types = Json::array();
  for (ActivityType a : m.activity_types) types.push_back(std::string(to_string(a)));
  j["activity_types"] = types;
  j["connections_count"] = m.connections_count ? Json(*m.connections_count) : Json(nullptr);
  return j;
}

InteractedMember member_from_json(const Json& j) {
  InteractedMember m;
  m.member_id = j.at("member_id").get<std::string>();
  m.display_name = j.at("display_name").get<std::string>();
  auto kind = parse_member_kind(j.at("kind").get<std::string>());
  if (!kind) throw Error(ErrorCode::kBadRow, "bundle: unknown member kind for " + m.member_id);
  m.kind = *kind;
  for (const auto& t : j.at("activity_types")) {
    auto a = parse_activity_type(t.get<std::string>());
    if (!a) throw Error(ErrorCode::kBadRow, "bundle: unknown activity type for " + m.member_id);
    m.activity_types.insert(*a);
  }
  if (!j.at("connections_count").is_null()) m.connections_count = j.at("connections_count").get<std::uint64_t>();
  return m;
}

Json bundle_json(const Bundle& b, const PipelineConfig& config) {
  Json j = provenance(config);
  j["platform"] = std::string(to_string(b.platform));
  j["ego_id"] = b.ego_id;
  Json members = Json::array();
  for (const auto& m : b.members) members.push_back(member_json(m));
  j["members"] = members;
  Json docs = Json::array();
  for (const auto& d : b.documents) {
    Json e;
    e["doc_id"] = d.doc_id;
    e["owner_id"] = d.owner_id;
    e["dataset_no"] = d.dataset_no;
    e["parent_doc_id"] = d.parent_doc_id ? Json(*d.parent_doc_id) : Json(nullptr);
    e["text"] = d.text;
    e["mentions"] = to_json(d.mentions);
    e["flagged_non_english"] = d.flagged_non_english;
    docs.push_back(e);
  }
  j["documents"] = docs;
  return j;
}

Bundle load_bundle(const fs::path& path) {
  if (!fs::exists(path)) {
    throw Error(ErrorCode::kBadConfig, "no bundle at " + path.string() + "; run `egorank ingest` first");
  }
  Json j;
  try {
    j = Json::parse(read_file(path));
    Bundle b;
    auto platform = parse_platform(j.at("platform").get<std::string>());
    if (!platform) throw Error(ErrorCode::kBadRow, "bundle: unknown platform");
    b.platform = *platform;
    b.ego_id = j.at("ego_id").get<std::string>();
    for (const auto& m : j.at("members")) b.members.push_back(member_from_json(m));
    for (const auto& e : j.at("documents")) {
      textprep::CleanDocument d;
      d.doc_id = e.at("doc_id").get<std::string>();
      d.owner_id = e.at("owner_id").get<std::string>();
      d.dataset_no = e.at("dataset_no").get<int>();
      if (!e.at("parent_doc_id").is_null()) d.parent_doc_id = e.at("parent_doc_id").get<std::string>();
      d.text = e.at("text").get<std::string>();
      d.mentions = e.at("mentions").get<std::vector<std::string>>();
      d.flagged_non_english = e.at("flagged_non_english").get<bool>();
      b.documents.push_back(std::move(d));
    }
    return b;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kBadRow, "malformed bundle " + path.string() + ": " + e.what());
  }
}

// ---------------------------------------------------------------------------
// Analysis: everything rank and targets share.

struct Analysis {
  PreparedCorpus prepared;
  simdex::WordVectorStore vectors;
  std::unique_ptr<simdex::BoWTable> bow;
  std::unique_ptr<simdex::TfIdfModel> tfidf;
};

std::unique_ptr<Analysis> analyze(const PipelineConfig& config) {
  auto a = std::make_unique<Analysis>();
  a->prepared = prepare(config);
  a->vectors = simdex::WordVectorStore::load(resource_path(config, "embeddings"));
  a->bow = std::make_unique<simdex::BoWTable>(simdex::BoWTable::build(a->prepared.documents));
  a->tfidf = std::make_unique<simdex::TfIdfModel>(simdex::TfIdfModel::build(*a->bow));
  return a;
}

RankSummary rank_with(const Analysis& a, const PipelineConfig& config) {
  RankSummary summary;
  const PreparedCorpus& pc = a.prepared;
  summary.eligible_members = pc.eligible.size();
  summary.warnings = pc.warnings;
  const simdex::SimilarityModels models{&a.vectors, a.bow.get(), a.tfidf.get()};
  recommend::ScoringConfig scoring;
  scoring.ego_id = pc.ego_id;
  scoring.normalization = *recommend::parse_normalization(config.normalization);
  scoring.threads = std::max(1u, config.threads);

  for (const Bucket& bucket : selected_buckets(config)) {
    BucketRanking br;
    br.ranking.bucket = bucket;
    try {
      br.scores = recommend::score_bucket(pc.documents, bucket, models, scoring);
      br.ranking = recommend::rank_members(br.scores, pc.eligible, bucket);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kEmptyBucket) throw;
      br.warnings.push_back(e.what());
    }

    std::string csv = "rank,member_id,score,best_doc_id\n";
    Json entries = Json::array();
    for (std::size_t i = 0; i < br.ranking.entries.size(); ++i) {
      const recommend::RankingEntry& e = br.ranking.entries[i];
      const std::string score = detail::format_double(e.member_score);
      csv += std::to_string(i + 1) + "," + csv::quote_if_needed(e.member_id) + "," + score + "," +
             csv::quote_if_needed(e.best_doc_id) + "\n";
      Json row;
      row["rank"] = i + 1;
      row["member_id"] = e.member_id;
      row["score"] = e.member_score;
      row["best_doc_id"] = e.best_doc_id;
      entries.push_back(row);
    }
    Json j = provenance(config);
    j["bucket"] = to_string(bucket);
    j["normalization"] = config.normalization;
    j["scored_documents"] = br.scores.size();
    j["warnings"] = to_json(br.warnings);
    j["entries"] = entries;

    const std::string stem = bucket_file_stem(bucket);
    br.csv_path = config.out_dir / (stem + ".csv");
    br.json_path = config.out_dir / (stem + ".json");
    write_file(br.csv_path, csv);
    write_file(br.json_path, dump(j));
    summary.buckets.push_back(std::move(br));
  }
  return summary;
}

TargetsSummary select_with(const RankSummary& ranked, const std::vector<InteractedMember>& eligible,
                           const PipelineConfig& config) {
  TargetsSummary summary;
  targets::TargetConfig tc;
  tc.threshold = config.threshold;
  tc.limits.allow_small = config.allow_small;
  tc.limits.network_size = eligible.size();
  const bool single = ranked.buckets.size() == 1;

  Json buckets = Json::array();
  Json skipped = Json::array();
  for (const BucketRanking& br : ranked.buckets) {
    try {
      targets::TargetSelection s = targets::top_most(br.ranking, config.n_it, eligible, tc);
      Json j;
      j["bucket"] = to_string(s.bucket);
      j["n_it"] = s.n_it;
      j["d_it"] = s.d_it();
      j["effective_count"] = s.effective.size();
      j["selected"] = to_json(s.selected);
      j["defaults_removed"] = to_json(s.defaults_removed);
      j["effective"] = to_json(s.effective);
      j["warnings"] = to_json(s.warnings);
      buckets.push_back(j);
      summary.selections.push_back(std::move(s));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kRankingTooSmall || single) throw;
      Json j;
      j["bucket"] = to_string(br.ranking.bucket);
      j["reason"] = e.what();
      skipped.push_back(j);
      summary.skipped.emplace_back(br.ranking.bucket, e.what());
    }
  }
  Json report = provenance(config);
  report["n_it"] = config.n_it;
  report["threshold"] = config.threshold;
  report["network_size"] = eligible.size();
  report["buckets"] = buckets;
  report["skipped"] = skipped;
  summary.report_path = config.out_dir / "targets.json";
  write_file(summary.report_path, dump(report));

  const auto problems = validate_targets_report(summary.report_path);
  if (!problems.empty()) {
    std::string msg = "targets report failed validation:";
    for (const auto& p : problems) msg += "\n  " + p;
    throw Error(ErrorCode::kPrecondition, msg);
  }
  return summary;
}

std::uint64_t fnv1a(std::string_view s, std::uint64_t h = 0xcbf29ce484222325ULL) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

fs::path resource_path(const PipelineConfig& config, std::string_view name) {
  const fs::path& explicit_path = explicit_resource(config, name);
  if (!explicit_path.empty()) return explicit_path;
  if (name == "embeddings") return config.corpus_root / "embeddings.txt";
  auto it = default_resource_names().find(name);
  if (it == default_resource_names().end()) throw Error(ErrorCode::kBadConfig, "unknown resource " + std::string(name));
  return config.data_dir / it->second;
}

std::vector<Bucket> selected_buckets(const PipelineConfig& config) {
  if (detail::iequals(detail::trim(config.bucket), "all")) {
    auto all = all_buckets();
    return {all.begin(), all.end()};
  }
  auto b = parse_bucket(config.bucket);
  if (!b) {
    throw Error(ErrorCode::kBadConfig,
                "bucket must be 'all' or '<Category>/<Sentiment>', got '" + config.bucket + "'");
  }
  return {*b};
}

void validate(const PipelineConfig& c, Stage stage) {
  std::vector<std::string> problems;
  if (!parse_platform(c.platform)) problems.push_back("unknown platform '" + c.platform + "'");
  if (c.ego_id.empty()) problems.push_back("ego_id is empty");
  if (!c.since.empty() && !parse_timestamp(c.since)) problems.push_back("since is not YYYY-MM-DDTHH:MM:SSZ");
  if (!c.until.empty() && !parse_timestamp(c.until)) problems.push_back("until is not YYYY-MM-DDTHH:MM:SSZ");
  if (c.n_it == 0) problems.push_back("n_it must be at least 1");
  if (c.threshold == 0) problems.push_back("threshold must be positive");
  if (!recommend::parse_normalization(c.normalization)) {
    problems.push_back("normalization must be 'raw' or 'mean'");
  }
  if (!detail::iequals(detail::trim(c.bucket), "all") && !parse_bucket(c.bucket)) {
    problems.push_back("bucket must be 'all' or '<Category>/<Sentiment>'");
  }
  if (!parse_bucket(c.ego_bucket)) problems.push_back("ego_bucket must be '<Category>/<Sentiment>'");

  auto require = [&](std::string_view name) {
    const fs::path p = resource_path(c, name);
    if (!fs::is_regular_file(p)) problems.push_back(std::string(name) + " file not found: " + p.string());
  };
  const bool ingests = stage == Stage::kIngest || stage == Stage::kRun;
  const bool ranks = stage == Stage::kRank || stage == Stage::kTargets || stage == Stage::kRun;
  if (ingests) {
    if (c.corpus_root.empty() && c.dataset5.empty()) problems.push_back("corpus_root is not set");
    for (auto name : {"stop_words", "lemmas", "lexicon"}) require(name);
    if (!c.spelling.empty() && !fs::is_regular_file(c.spelling)) {
      problems.push_back("spelling file not found: " + c.spelling.string());
    }
  }
  if (ranks) {
    for (auto name : {"stop_words", "lemmas", "lexicon", "negators", "boosters", "seed_corpus", "embeddings"}) {
      require(name);
    }
  }
  if (stage == Stage::kSynth) {
    if (c.corpus_root.empty()) problems.push_back("corpus_root is not set");
    for (auto name : {"topic_profiles", "filler_words", "lexicon"}) require(name);
    if (c.embedding_dim == 0) problems.push_back("embedding_dim must be positive");
  }
  if (!problems.empty()) {
    std::string msg = "invalid configuration:";
    for (const auto& p : problems) msg += "\n  " + p;
    throw Error(ErrorCode::kBadConfig, msg);
  }
}

std::string config_hash(const PipelineConfig& c) {
  std::ostringstream s;
  s << "platform=" << c.platform << "\nego_id=" << c.ego_id << "\ncorpus_root=" << c.corpus_root.string()
    << "\ndataset5=" << c.dataset5.string() << "\nego_dir=" << c.ego_dir.string()
    << "\nmembers_dir=" << c.members_dir.string() << "\nsince=" << c.since << "\nuntil=" << c.until
    << "\ndata_dir=" << c.data_dir.string();
  for (auto name : {"stop_words", "lemmas", "lexicon", "negators", "boosters", "seed_corpus",
                    "topic_profiles", "filler_words", "embeddings"}) {
    s << "\n" << name << "=" << explicit_resource(c, name).string();
  }
  s << "\nspelling=" << c.spelling.string() << "\nbucket=" << c.bucket << "\nn_it=" << c.n_it
    << "\nthreshold=" << c.threshold << "\nnormalization=" << c.normalization
    << "\nallow_small=" << c.allow_small << "\nseed=" << c.seed << "\nmembers=" << c.members
    << "\ndocs_per_member=" << c.docs_per_member << "\nego_docs=" << c.ego_docs << "\nplanted=" << c.planted
    << "\nmega_members=" << c.mega_members << "\ngroups=" << c.groups << "\nforeign_docs=" << c.foreign_docs
    << "\nmin_tokens=" << c.min_tokens << "\nmax_tokens=" << c.max_tokens << "\nego_bucket=" << c.ego_bucket
    << "\nembedding_dim=" << c.embedding_dim << "\nembedding_words=" << c.embedding_words
    << "\nseed_docs_per_category=" << c.seed_docs_per_category << "\n";
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(fnv1a(s.str())));
  return buf;
}

IngestSummary ingest(const PipelineConfig& config) {
  validate(config, Stage::kIngest);
  const Platform platform = *parse_platform(config.platform);
  CorpusLayout layout;
  layout.root = config.corpus_root;
  if (!config.dataset5.empty()) layout.dataset5 = config.dataset5;
  if (!config.ego_dir.empty()) layout.ego_dir = config.ego_dir;
  if (!config.members_dir.empty()) layout.members_dir = config.members_dir;
  LoadedCorpus loaded = load_corpus(layout, platform, config.ego_id, window_of(config));

  // The detector knows every word of the configured resources.
  textprep::LanguageDetector detector = textprep::LanguageDetector::with_builtin_words();
  {
    const auto lemmatizer = lexproc::Lemmatizer::load(resource_path(config, "lemmas"));
    std::vector<std::string> words(lemmatizer.lemmas().begin(), lemmatizer.lemmas().end());
    for (const auto& [form, lemma] : lemmatizer.exceptions()) words.push_back(form);
    const auto stop = lexproc::StopList::load(resource_path(config, "stop_words"));
    words.insert(words.end(), stop.words().begin(), stop.words().end());
    for (const std::string& line : read_word_list(resource_path(config, "lexicon"))) {
      words.push_back(std::string(detail::trim(detail::split(line, '\t')[0])));
    }
    detector.add_words(words);
  }
  std::optional<textprep::SpellingCorrector> speller;
  if (!config.spelling.empty()) speller = textprep::SpellingCorrector::load(config.spelling);
  textprep::PrimaryConfig primary;
  primary.detector = &detector;
  primary.speller = speller ? &*speller : nullptr;

  IngestSummary summary;
  summary.warnings = loaded.warnings;
  Bundle bundle;
  bundle.platform = platform;
  bundle.ego_id = config.ego_id;
  std::vector<std::string> mentions;
  std::unordered_set<std::string> seen_mentions;
  for (const Document* d : loaded.corpus.all_documents()) {
    textprep::CleanDocument clean = textprep::primary_preprocess(*d, primary);
    if (clean.flagged_non_english) ++summary.flagged_non_english;
    // Only the ego's mentions are interactions with the ego.
    if (is_ego_dataset(d->dataset_no)) {
      for (const std::string& m : clean.mentions) {
        if (m != config.ego_id && seen_mentions.insert(m).second) mentions.push_back(m);
      }
    }
    bundle.documents.push_back(std::move(clean));
  }
  InteractionList list = build_interaction_list(loaded.corpus, mentions);
  std::unordered_set<std::string> listed;
  for (const InteractedMember& m : loaded.corpus.members) listed.insert(m.member_id);
  for (const InteractedMember& m : list.members) {
    if (!listed.count(m.member_id)) ++summary.mentions_merged;
  }
  summary.warnings.insert(summary.warnings.end(), list.warnings.begin(), list.warnings.end());
  bundle.members = std::move(list.members);

  for (int no = 1; no <= 9; ++no) {
    summary.dataset_counts[no] =
        no == 5 ? loaded.corpus.members.size()
                : (loaded.corpus.datasets.count(no) ? loaded.corpus.datasets.at(no).size() : 0);
  }
  summary.documents = bundle.documents.size();
  summary.mentions_found = mentions.size();
  summary.members = bundle.members.size();

  summary.bundle_path = config.out_dir / "bundle.json";
  summary.report_path = config.out_dir / "ingest_report.json";
  write_file(summary.bundle_path, dump(bundle_json(bundle, config)));

  Json report = provenance(config);
  Json counts;
  for (const auto& [no, n] : summary.dataset_counts) counts[std::to_string(no)] = n;
  report["dataset_counts"] = counts;
  report["documents"] = summary.documents;
  report["flagged_non_english"] = summary.flagged_non_english;
  report["mentions_found"] = summary.mentions_found;
  report["mentions_merged"] = summary.mentions_merged;
  report["members"] = summary.members;
  report["warnings"] = to_json(summary.warnings);
  write_file(summary.report_path, dump(report));
  return summary;
}

PreparedCorpus prepare(const PipelineConfig& config) {
  PreparedCorpus out;
  const Bundle bundle = load_bundle(config.out_dir / "bundle.json");
  out.ego_id = bundle.ego_id;
  const auto stop_list = lexproc::StopList::load(resource_path(config, "stop_words"));
  const auto lemmatizer = lexproc::Lemmatizer::load(resource_path(config, "lemmas"));
  const lexproc::LexicalResources res{&stop_list, &lemmatizer};
  out.documents = lexproc::build_document_set(bundle.documents, res);

  // Categories: classify independent documents, then copy labels to
  // share-texts and comments.
  const auto training = classify::load_labeled_corpus(resource_path(config, "seed_corpus"), res);
  const auto model = classify::CategoryClassifier::train(training);
  std::map<std::string, classify::CategoryLabel> labels;
  for (const lexproc::TokenizedDoc& d : out.documents.documents) {
    if (d.flagged_non_english || is_dependent_dataset(d.dataset_no)) continue;
    labels.emplace(d.doc_id, classify::classify_category(d, model));
  }
  for (const lexproc::TokenizedDoc& d : out.documents.documents) {
    if (d.flagged_non_english || !is_dependent_dataset(d.dataset_no)) continue;
    try {
      labels.emplace(d.doc_id, classify::inherit_category(d, labels));
    } catch (const Error& e) {
      if (d.eligible()) out.warnings.push_back(std::string(e.what()) + "; document left unbucketed");
    }
  }

  const auto lexicon = classify::SentimentLexicon::load(
      resource_path(config, "lexicon"), resource_path(config, "negators"), resource_path(config, "boosters"));
  std::map<std::string, classify::SentimentResult> sentiments;
  for (const textprep::CleanDocument& d : bundle.documents) {
    if (!d.flagged_non_english) sentiments.emplace(d.doc_id, classify::sentiment(d.text, lexicon));
  }
  const auto unlabeled = classify::assign_buckets(out.documents, labels, sentiments);
  if (!unlabeled.empty()) {
    out.warnings.push_back(std::to_string(unlabeled.size()) + " eligible documents have no bucket");
  }

  for (InteractedMember& m : targets::filter_eligible(bundle.members)) {
    if (m.member_id != bundle.ego_id) out.eligible.push_back(std::move(m));
  }
  return out;
}

RankSummary rank(const PipelineConfig& config) {
  validate(config, Stage::kRank);
  return rank_with(*analyze(config), config);
}

TargetsSummary select(const PipelineConfig& config) {
  validate(config, Stage::kTargets);
  const auto a = analyze(config);
  return select_with(rank_with(*a, config), a->prepared.eligible, config);
}

RunSummary run(const PipelineConfig& config) {
  validate(config, Stage::kRun);
  RunSummary out;
  out.ingest = ingest(config);
  const auto a = analyze(config);
  out.rank = rank_with(*a, config);
  out.targets = select_with(out.rank, a->prepared.eligible, config);
  return out;
}

SynthSummary synth(const PipelineConfig& config) {
  validate(config, Stage::kSynth);
  synth::SynthParams p;
  p.seed = config.seed;
  p.platform = *parse_platform(config.platform);
  p.ego_id = config.ego_id;
  p.members = config.members;
  p.docs_per_member = config.docs_per_member;
  p.ego_docs = config.ego_docs;
  p.planted = config.planted;
  p.mega_members = config.mega_members;
  p.groups = config.groups;
  p.foreign_docs = config.foreign_docs;
  p.min_tokens = config.min_tokens;
  p.max_tokens = config.max_tokens;
  p.ego_bucket = *parse_bucket(config.ego_bucket);
  p.topic_profiles = synth::load_topic_profiles(resource_path(config, "topic_profiles"));
  p.vocab = read_word_list(resource_path(config, "filler_words"));
  // Markers are the clearly polar lexicon words.
  for (const std::string& line : read_word_list(resource_path(config, "lexicon"))) {
    auto parts = detail::split(line, '\t');
    double v = 0.0;
    if (parts.size() < 2 || !detail::parse_number(parts[1], v)) continue;
    std::string w(detail::trim(parts[0]));
    if (v >= 1.5) p.positive_words.push_back(w);
    if (v <= -1.5) p.negative_words.push_back(w);
  }

  const synth::SyntheticCorpus sc = synth::generate_synthetic_corpus(p);
  SynthSummary out;
  out.corpus_root = config.corpus_root;
  save_corpus(sc.corpus, config.corpus_root);
  out.documents = sc.corpus.document_count();

  out.embeddings = resource_path(config, "embeddings");
  const auto vectors = synth::generate_word_vectors(p, sc.focus_words, config.embedding_dim, config.embedding_words);
  {
    std::ostringstream s;
    vectors.write(s);
    write_file(out.embeddings, s.str());
  }
  out.seed_corpus = config.corpus_root / "seed_corpus.csv";
  synth::write_seed_corpus(out.seed_corpus, synth::generate_seed_corpus(p, config.seed_docs_per_category));

  Json truth = provenance(config);
  truth["seed"] = config.seed;
  truth["ego_bucket"] = to_string(p.ego_bucket);
  truth["focus_words"] = to_json(sc.focus_words);
  truth["planted"] = to_json(sc.planted);
  truth["mega"] = to_json(sc.mega);
  truth["groups"] = to_json(sc.groups);
  truth["foreign_docs"] = to_json(sc.foreign);
  Json labels;
  for (const auto& [id, b] : sc.truth) labels[id] = to_string(b);
  truth["documents"] = labels;
  out.truth = config.corpus_root / "truth.json";
  write_file(out.truth, dump(truth));
  return out;
}

std::vector<std::string> validate_targets_report(const fs::path& path) {
  std::vector<std::string> problems;
  Json j;
  try {
    j = Json::parse(read_file(path));
    for (const Json& b : j.at("buckets")) {
      targets::TargetSelection s;
      s.n_it = b.at("n_it").get<std::size_t>();
      s.selected = b.at("selected").get<std::vector<std::string>>();
      s.defaults_removed = b.at("defaults_removed").get<std::vector<std::string>>();
      s.effective = b.at("effective").get<std::vector<std::string>>();
      const std::string name = b.at("bucket").get<std::string>();
      for (const std::string& p : targets::validate(s)) problems.push_back(name + ": " + p);
      if (b.at("d_it").get<std::size_t>() != s.defaults_removed.size()) {
        problems.push_back(name + ": d_it does not match defaults_removed");
      }
      if (b.at("effective_count").get<std::size_t>() != s.effective.size()) {
        problems.push_back(name + ": effective_count does not match effective");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    problems.push_back(std::string("malformed report: ") + e.what());
  }
  return problems;
}

}  // namespace egorank::pipeline
