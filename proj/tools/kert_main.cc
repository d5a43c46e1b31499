// kert: topical keyphrase extraction and ranking over a corpus of titles.
//
//   kert train --input titles.txt --stopwords stop.txt --topics 5 --out run/
//   kert mine  --out run/ --min-support 5
//   kert rank  --out run/ --variant full --top 50
//   kert run   --config run.conf [--resume]
//   kert eval-nkqm --out run/ --judgments judged.tsv --k 5,10,20
//   kert eval-mi   --out run/ --labels categories.tsv --k 20,50,100
//   kert export    --input titles.txt --stopwords stop.txt --vocab vocab.tsv

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "kert/config.h"
#include "kert/error.h"
#include "kert/eval.h"
#include "kert/io.h"
#include "kert/pipeline.h"
#include "kert/version.h"

namespace fs = std::filesystem;

namespace {

// Flags recorded in command-line order, applied on top of the config file.
struct Overrides {
  std::string config_file;
  std::vector<std::pair<std::string, std::string>> values;

  void add(CLI::App* app, const std::string& flag, const std::string& key,
           const std::string& help) {
    app->add_option_function<std::string>(
        flag, [this, key](const std::string& v) { values.emplace_back(key, v); }, help);
  }

  kert::RunConfig resolve() const {
    kert::RunConfig config;
    config.output_dir = kert::default_output_dir();
    if (!config_file.empty()) config = kert::load_run_config(config_file, config);
    for (const auto& [k, v] : values) config.set(k, v);
    return config;
  }
};

void add_corpus_flags(CLI::App* app, Overrides& o) {
  o.add(app, "--input", "input", "Titles file, one UTF-8 title per line");
  o.add(app, "--stopwords", "stopwords", "Stopword file, one word per line");
  o.add(app, "--lowercase", "lowercase", "Lowercase before stopword matching (true/false)");
  o.add(app, "--min-token-length", "min_token_length", "Drop tokens shorter than this");
}

void add_model_flags(CLI::App* app, Overrides& o) {
  o.add(app, "--topics,-k", "topics", "Number of foreground topics");
  o.add(app, "--alpha", "alpha", "Dirichlet prior on topic mixtures");
  o.add(app, "--beta", "beta", "Dirichlet prior on topic word distributions");
  o.add(app, "--lambda", "lambda", "Prior probability of the foreground switch");
  o.add(app, "--burn-in", "burn_in", "Sweeps discarded before collecting samples");
  o.add(app, "--sweeps", "sweeps", "Total Gibbs sweeps");
  o.add(app, "--seed", "seed", "Sampler seed");
  o.add(app, "--matrices", "write_matrices", "Also write phi.tsv and theta.tsv (true/false)");
}

void add_mine_flags(CLI::App* app, Overrides& o) {
  o.add(app, "--min-support", "min_support", "Minimum topical support");
  o.add(app, "--max-size", "max_size", "Largest phrase size mined");
}

void add_rank_flags(CLI::App* app, Overrides& o) {
  o.add(app, "--gamma", "gamma", "Completeness cutoff in [0,1]");
  o.add(app, "--omega", "omega", "Phraseness weight in [0,1]");
  o.add(app, "--variant", "variant",
        "full|no_cov|no_pur|no_phr|no_com|cov_only|pur_only|cov_pur");
  o.add(app, "--top", "top", "Keep only the top N phrases per topic (0 = all)");
}

void add_common_flags(CLI::App* app, Overrides& o) {
  app->add_option("--config", o.config_file, "Key-value config file")->check(CLI::ExistingFile);
  o.add(app, "--out,-o", "output_dir", "Run directory (default: $KERT_OUTPUT_DIR or kert_out)");
}

void print_record(const kert::StageRecord& r) {
  std::cerr << r.stage << ": " << (r.reused ? "reused" : "done") << " config=" << r.config_hash
            << " (" << r.seconds << "s)\n";
}

std::vector<kert::TopicRanking> read_rankings(const fs::path& dir, int topics) {
  std::vector<kert::TopicRanking> rankings;
  const kert::RunLayout layout{dir};
  for (kert::TopicId t = 1; t <= topics; ++t) {
    std::ifstream in(layout.ranked_tsv(t));
    if (!in) throw kert::IoError("cannot open " + layout.ranked_tsv(t).string());
    rankings.push_back(kert::read_ranked_tsv(in, layout.ranked_tsv(t).string()));
  }
  return rankings;
}

kert::LabeledCorpus read_labeled(const fs::path& dir) {
  const auto path = kert::RunLayout{dir}.labeled();
  std::ifstream in(path);
  if (!in) throw kert::IoError("cannot open " + path.string());
  return kert::read_labeled_corpus(in, path.string());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Topical keyphrase extraction and ranking for short titles"};
  app.set_version_flag("--version", kert::kVersion);
  app.require_subcommand(1);

  Overrides o;
  bool resume = false;
  std::vector<std::size_t> ks;
  std::string judgments, labels_path, vocab_path;

  auto* train = app.add_subcommand("train", "Cluster title words with background LDA");
  add_common_flags(train, o);
  add_corpus_flags(train, o);
  add_model_flags(train, o);

  auto* mine = app.add_subcommand("mine", "Mine frequent word sets per topic");
  add_common_flags(mine, o);
  add_mine_flags(mine, o);

  auto* rank = app.add_subcommand("rank", "Score and rank candidate keyphrases");
  add_common_flags(rank, o);
  add_rank_flags(rank, o);

  auto* run = app.add_subcommand("run", "train, mine and rank in one go");
  add_common_flags(run, o);
  add_corpus_flags(run, o);
  add_model_flags(run, o);
  add_mine_flags(run, o);
  add_rank_flags(run, o);
  run->add_flag("--resume", resume, "Reuse intermediates whose config hash matches");

  auto* nkqm = app.add_subcommand("eval-nkqm", "nKQM@K of ranked lists against judge scores");
  add_common_flags(nkqm, o);
  nkqm->add_option("--judgments", judgments, "TSV: topic, phrase, judge, score")->required();
  nkqm->add_option("--k", ks, "Cutoffs, comma separated")->delimiter(',')->required();

  auto* mi = app.add_subcommand("eval-mi", "MI_K between ranked topics and title categories");
  add_common_flags(mi, o);
  mi->add_option("--labels", labels_path, "TSV: doc_id, category")->required();
  mi->add_option("--k", ks, "Cutoffs, comma separated")->delimiter(',')->required();

  auto* exp = app.add_subcommand("export", "Write the vocabulary of a titles file");
  add_common_flags(exp, o);
  add_corpus_flags(exp, o);
  exp->add_option("--vocab", vocab_path, "Output TSV (default: <out>/vocabulary.tsv)");

  CLI11_PARSE(app, argc, argv);

  try {
    const kert::RunConfig config = o.resolve();
    const fs::path dir = config.output_dir;

    if (train->parsed()) {
      print_record(kert::train_stage(config, dir));
    } else if (mine->parsed()) {
      print_record(kert::mine_stage(dir, config.min_support, config.max_size));
    } else if (rank->parsed()) {
      print_record(kert::rank_stage(dir, config.ranking, config.top));
    } else if (run->parsed()) {
      const auto result = kert::run_pipeline(config, resume);
      for (const auto& r : result.stages) print_record(r);
      std::cerr << "artifacts in " << result.dir.string() << '\n';
    } else if (nkqm->parsed()) {
      const auto labeled = read_labeled(dir);
      const auto rankings = read_rankings(dir, labeled.topics);
      std::ifstream in(judgments);
      if (!in) throw kert::IoError("cannot open " + judgments);
      const kert::JudgeTable table(kert::read_judge_scores(in, judgments));
      std::cout << "K\tnKQM\n";
      for (std::size_t k : ks) {
        std::cout << k << '\t' << kert::format_double(kert::nkqm_at_k(rankings, table, k)) << '\n';
      }
    } else if (mi->parsed()) {
      const auto labeled = read_labeled(dir);
      const auto rankings = read_rankings(dir, labeled.topics);
      std::vector<std::vector<kert::Phrase>> phrases(rankings.size());
      for (std::size_t t = 0; t < rankings.size(); ++t) {
        for (const auto& surface : rankings[t].phrases) {
          if (auto p = kert::parse_phrase(surface, labeled.corpus.vocabulary)) {
            phrases[t].push_back(std::move(*p));
          }
        }
      }
      std::ifstream in(labels_path);
      if (!in) throw kert::IoError("cannot open " + labels_path);
      const auto categories =
          kert::read_category_labels(in, labeled.corpus.titles.size(), labels_path);
      std::cout << "K\tMI\n";
      for (std::size_t k : ks) {
        std::cout << k << '\t'
                  << kert::format_double(kert::mi_at_k(phrases, labeled.corpus, categories, k))
                  << '\n';
      }
    } else if (exp->parsed()) {
      if (config.input.empty()) throw kert::ConfigError("export needs --input");
      const auto corpus = kert::load_corpus(config.input, config.stopwords, config.tokenizer);
      const fs::path out_path = vocab_path.empty() ? dir / "vocabulary.tsv" : fs::path(vocab_path);
      if (out_path.has_parent_path()) fs::create_directories(out_path.parent_path());
      std::ofstream out(out_path);
      if (!out) throw kert::IoError("cannot write " + out_path.string());
      kert::write_vocabulary_tsv(out, corpus);
      std::cerr << corpus.titles.size() << " titles, " << corpus.vocabulary.size()
                << " words -> " << out_path.string() << '\n';
    }
  } catch (const std::exception& e) {
    std::cerr << "kert: error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
