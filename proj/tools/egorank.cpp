// egorank: ingest an ego network, rank interacted members per bucket and
// select the top-most influenceable targets.
//
// Exit status: 0 success, 1 usage or configuration error, 2 data error.

#include <iostream>

#include <CLI11.hpp>

#include "egorank/error.hpp"
#include "egorank/pipeline.hpp"

namespace {

using egorank::pipeline::PipelineConfig;

void add_options(CLI::App& app, PipelineConfig& c) {
  app.add_option("--platform", c.platform, "facebook, twitter or linkedin")->capture_default_str();
  app.add_option("--ego_id", c.ego_id, "member id of the ego")->capture_default_str();
  app.add_option("--corpus_root", c.corpus_root, "corpus directory (ego/, members/, dataset5.csv)");
  app.add_option("--dataset5", c.dataset5, "Dataset 5 file (default <corpus_root>/dataset5.csv)");
  app.add_option("--ego_dir", c.ego_dir, "ego datasets 1-4 (default <corpus_root>/ego)");
  app.add_option("--members_dir", c.members_dir, "member datasets 6-9 (default <corpus_root>/members)");
  app.add_option("--since", c.since, "keep activity at or after YYYY-MM-DDTHH:MM:SSZ");
  app.add_option("--until", c.until, "keep activity at or before YYYY-MM-DDTHH:MM:SSZ");

  app.add_option("--data_dir", c.data_dir, "directory of default resource files")->capture_default_str();
  app.add_option("--stop_words", c.stop_words, "stop list");
  app.add_option("--lemmas", c.lemmas, "lemma dictionary");
  app.add_option("--lexicon", c.lexicon, "sentiment lexicon");
  app.add_option("--negators", c.negators, "negator list");
  app.add_option("--boosters", c.boosters, "booster list");
  app.add_option("--seed_corpus", c.seed_corpus, "labeled category training corpus");
  app.add_option("--topic_profiles", c.topic_profiles, "synthetic topic profiles");
  app.add_option("--filler_words", c.filler_words, "synthetic filler words");
  app.add_option("--embeddings", c.embeddings, "word vectors (default <corpus_root>/embeddings.txt)");
  app.add_option("--spelling", c.spelling, "word<TAB>count lexicon; enables spelling correction");

  app.add_option("--bucket", c.bucket, "'all' or <Category>/<Sentiment>")->capture_default_str();
  app.add_option("--n_it", c.n_it, "number of targets to select")->capture_default_str();
  app.add_option("--threshold", c.threshold, "connections above which a member is a default influencer")
      ->capture_default_str();
  app.add_option("--normalization", c.normalization, "raw or mean")->capture_default_str();
  app.add_flag("--allow_small,--allow-small", c.allow_small, "lift the lower bound of 50 on n_it");

  app.add_option("--seed", c.seed, "synthetic generator seed")->capture_default_str();
  app.add_option("--members", c.members)->capture_default_str();
  app.add_option("--docs_per_member", c.docs_per_member)->capture_default_str();
  app.add_option("--ego_docs", c.ego_docs)->capture_default_str();
  app.add_option("--planted", c.planted)->capture_default_str();
  app.add_option("--mega_members", c.mega_members)->capture_default_str();
  app.add_option("--groups", c.groups)->capture_default_str();
  app.add_option("--foreign_docs", c.foreign_docs)->capture_default_str();
  app.add_option("--min_tokens", c.min_tokens)->capture_default_str();
  app.add_option("--max_tokens", c.max_tokens)->capture_default_str();
  app.add_option("--ego_bucket", c.ego_bucket)->capture_default_str();
  app.add_option("--embedding_dim", c.embedding_dim)->capture_default_str();
  app.add_option("--embedding_words", c.embedding_words)->capture_default_str();
  app.add_option("--seed_docs_per_category", c.seed_docs_per_category)->capture_default_str();

  app.add_option("--threads", c.threads, "scoring threads; output does not depend on it")
      ->capture_default_str();
  app.add_option("--out_dir", c.out_dir, "output directory")->capture_default_str();
}

void print_warnings(const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
}

void report_ingest(const egorank::pipeline::IngestSummary& s) {
  print_warnings(s.warnings);
  std::cout << "ingested " << s.documents << " documents (" << s.flagged_non_english
            << " flagged non-English), " << s.members << " members, " << s.mentions_merged
            << " added from mentions\n";
  for (const auto& [no, n] : s.dataset_counts) std::cout << "  dataset " << no << ": " << n << "\n";
  std::cout << "wrote " << s.bundle_path.string() << "\n";
}

void report_rank(const egorank::pipeline::RankSummary& s) {
  print_warnings(s.warnings);
  for (const auto& b : s.buckets) {
    print_warnings(b.warnings);
    std::cout << egorank::to_string(b.ranking.bucket) << ": " << b.ranking.entries.size()
              << " members ranked -> " << b.csv_path.string() << "\n";
  }
}

void report_targets(const egorank::pipeline::TargetsSummary& s) {
  for (const auto& sel : s.selections) {
    print_warnings(sel.warnings);
    std::cout << egorank::to_string(sel.bucket) << ": N_it = " << sel.n_it << ", D_it = " << sel.d_it()
              << ", effective = " << sel.effective.size() << "\n";
  }
  for (const auto& [bucket, reason] : s.skipped) {
    std::cerr << "warning: skipped " << egorank::to_string(bucket) << ": " << reason << "\n";
  }
  std::cout << "wrote " << s.report_path.string() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ego-network influenceable target recommender"};
  app.set_config("--config", "", "TOML or INI file; keys are the long option names");
  app.require_subcommand(1);
  app.fallthrough();
  PipelineConfig config;
  add_options(app, config);

  auto* ingest = app.add_subcommand("ingest", "load and normalize the corpus");
  auto* rank = app.add_subcommand("rank", "rank interacted members per bucket");
  auto* targets = app.add_subcommand("targets", "select the top-most influenceable targets");
  auto* run = app.add_subcommand("run", "ingest, rank and targets");
  auto* synth = app.add_subcommand("synth", "write a synthetic corpus and resources");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  namespace pl = egorank::pipeline;
  try {
    if (ingest->parsed()) {
      report_ingest(pl::ingest(config));
    } else if (rank->parsed()) {
      report_rank(pl::rank(config));
    } else if (targets->parsed()) {
      report_targets(pl::select(config));
    } else if (run->parsed()) {
      const pl::RunSummary s = pl::run(config);
      report_ingest(s.ingest);
      report_rank(s.rank);
      report_targets(s.targets);
    } else if (synth->parsed()) {
      const pl::SynthSummary s = pl::synth(config);
      std::cout << "wrote " << s.documents << " documents to " << s.corpus_root.string() << "\n"
                << "wrote " << s.embeddings.string() << "\n"
                << "wrote " << s.seed_corpus.string() << "\n"
                << "wrote " << s.truth.string() << "\n";
    }
  } catch (const egorank::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return egorank::is_config_error(e.code()) ? 1 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
