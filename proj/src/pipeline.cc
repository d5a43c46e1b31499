#include "kert/pipeline.h"

#include <chrono>
#include <fstream>
#include <functional>

#include <nlohmann/json.hpp>

#include "kert/io.h"
#include "kert/miner.h"
#include "kert/ranker.h"
#include "kert/topic_model.h"
#include "kert/version.h"

namespace kert {
namespace fs = std::filesystem;

namespace {

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

// Writes through a temporary file so an interrupted stage never leaves a
// truncated artifact that a resumed run would trust.
void write_file(const fs::path& path, const std::function<void(std::ostream&)>& body) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    body(out);
    out.flush();
    if (!out) throw IoError("error writing " + tmp.string());
  }
  fs::rename(tmp, path);
}

std::ifstream open_input(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return in;
}

// Config hash recorded in an artifact header, or empty if the file is absent.
std::string recorded_hash(const fs::path& path) {
  if (!fs::exists(path)) return {};
  auto in = open_input(path);
  std::string line;
  std::getline(in, line);
  return ArtifactHeader::parse(line, path.string()).fields["config"];
}

// Decides whether a set of artifacts can be reused.
bool reusable(const std::vector<fs::path>& paths, const std::string& expected,
              const std::string& stage) {
  bool all_match = !paths.empty();
  for (const auto& p : paths) {
    const std::string found = recorded_hash(p);
    if (found.empty()) {
      all_match = false;
      continue;
    }
    if (found != expected) {
      throw StaleArtifactError(p.string() + " was produced by config " + found + ", " + stage +
                               " now expects " + expected + "; remove it or rerun without resume");
    }
  }
  return all_match;
}

LabeledCorpus load_labeled(const fs::path& dir, ArtifactHeader& header) {
  const RunLayout layout{dir};
  auto in = open_input(layout.labeled());
  return read_labeled_corpus(in, layout.labeled().string(), &header);
}

template <typename F>
auto in_stage(const std::string& name, F&& body) {
  try {
    return body();
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(name, e.what());
  }
}

}  // namespace

StageRecord train_stage(const RunConfig& config, const fs::path& dir, bool resume) {
  Stopwatch clock;
  config.validate();
  if (config.input.empty()) throw ConfigError("no input titles file configured");
  const RunLayout layout{dir};
  const std::string hash = train_config_hash(config);
  if (resume && reusable({layout.labeled()}, hash, "train")) {
    return {"train", hash, clock.seconds(), true};
  }
  fs::create_directories(dir);
  const Corpus corpus = load_corpus(config.input, config.stopwords, config.tokenizer);
  const LabeledCorpus labeled = run_inference(corpus, config.model);
  write_file(layout.labeled(), [&](std::ostream& out) {
    write_labeled_corpus(out, labeled, {{"config", hash}});
  });
  if (config.write_matrices) {
    const ArtifactHeader phi_header{"kert-phi", {{"config", hash}}};
    const ArtifactHeader theta_header{"kert-theta", {{"config", hash}}};
    std::vector<std::string> topic_rows, doc_rows, fg_cols;
    for (int t = 0; t <= labeled.topics; ++t) topic_rows.push_back(std::to_string(t));
    for (int t = 1; t <= labeled.topics; ++t) fg_cols.push_back(std::to_string(t));
    for (std::size_t d = 0; d < corpus.titles.size(); ++d) doc_rows.push_back(std::to_string(d));
    if (labeled.phi_hat) {
      write_file(layout.phi(), [&](std::ostream& out) {
        write_matrix_tsv(out, *labeled.phi_hat, topic_rows, corpus.vocabulary.words(), phi_header);
      });
    }
    if (labeled.theta_hat) {
      write_file(layout.theta(), [&](std::ostream& out) {
        write_matrix_tsv(out, *labeled.theta_hat, doc_rows, fg_cols, theta_header);
      });
    }
  }
  return {"train", hash, clock.seconds(), false};
}

StageRecord mine_stage(const fs::path& dir, std::size_t min_support, std::size_t max_size,
                       bool resume) {
  Stopwatch clock;
  const RunLayout layout{dir};
  ArtifactHeader labeled_header;
  const LabeledCorpus labeled = load_labeled(dir, labeled_header);
  const std::string upstream = labeled_header.at("config");
  const std::string hash = mine_config_hash(upstream, min_support, max_size);

  std::vector<fs::path> outputs;
  for (TopicId t = 1; t <= labeled.topics; ++t) outputs.push_back(layout.candidates(t));
  if (resume && reusable(outputs, hash, "mine")) return {"mine", hash, clock.seconds(), true};

  const auto txns = build_transactions(labeled);
  const PhraseFormatter formatter(labeled.corpus);
  for (TopicId t = 1; t <= labeled.topics; ++t) {
    const auto candidates = mine_candidates(txns[t], min_support, max_size);
    const ArtifactHeader header{"kert-candidates",
                                {{"config", hash},
                                 {"upstream", upstream},
                                 {"topic", std::to_string(t)},
                                 {"transactions", std::to_string(txns[t].d_t_size())},
                                 {"min_support", std::to_string(min_support)},
                                 {"max_size", std::to_string(max_size)}}};
    write_file(layout.candidates(t), [&](std::ostream& out) {
      write_candidates(out, candidates, formatter, header);
    });
  }
  return {"mine", hash, clock.seconds(), false};
}

StageRecord rank_stage(const fs::path& dir, const RankingConfig& ranking, std::size_t top,
                       bool resume) {
  Stopwatch clock;
  ranking.validate();
  const RunLayout layout{dir};
  ArtifactHeader labeled_header;
  const LabeledCorpus labeled = load_labeled(dir, labeled_header);
  const std::string labeled_hash = labeled_header.at("config");

  std::vector<std::vector<CandidateKeyphrase>> candidates(labeled.topics + 1);
  std::string mine_hash;
  for (TopicId t = 1; t <= labeled.topics; ++t) {
    auto in = open_input(layout.candidates(t));
    ArtifactHeader header;
    candidates[t] = read_candidates(in, labeled.corpus.vocabulary, layout.candidates(t).string(),
                                    &header);
    if (header.at("upstream") != labeled_hash) {
      throw StaleArtifactError(layout.candidates(t).string() +
                               " was mined from a different labeled corpus (" +
                               header.at("upstream") + " vs " + labeled_hash + ")");
    }
    if (std::stoi(header.at("topic")) != t) {
      throw StaleArtifactError(layout.candidates(t).string() + " belongs to another topic");
    }
    if (t == 1) {
      mine_hash = header.at("config");
    } else if (header.at("config") != mine_hash) {
      throw StaleArtifactError("candidate files come from different mining runs");
    }
  }
  const std::string hash = rank_config_hash(mine_hash, ranking, top);

  std::vector<fs::path> outputs;
  for (TopicId t = 1; t <= labeled.topics; ++t) outputs.push_back(layout.ranked_tsv(t));
  if (resume && reusable(outputs, hash, "rank")) return {"rank", hash, clock.seconds(), true};

  const auto txns = build_transactions(labeled);
  const TopicContext context(txns);
  const PhraseFormatter formatter(labeled.corpus);
  for (TopicId t = 1; t <= labeled.topics; ++t) {
    auto ranked = rank_topic(candidates[t], context, ranking, formatter);
    if (top > 0 && ranked.size() > top) ranked.resize(top);
    const ArtifactHeader header{"kert-ranked",
                                {{"config", hash},
                                 {"upstream", mine_hash},
                                 {"topic", std::to_string(t)},
                                 {"variant", std::string(variant_name(ranking.variant))},
                                 {"gamma", format_double(ranking.gamma)},
                                 {"omega", format_double(ranking.omega)}}};
    write_file(layout.ranked_tsv(t), [&](std::ostream& out) { write_ranked_tsv(out, ranked, header); });
    write_file(layout.ranked_jsonl(t),
               [&](std::ostream& out) { write_ranked_jsonl(out, ranked, header); });
  }
  return {"rank", hash, clock.seconds(), false};
}

PipelineResult run_pipeline(const RunConfig& config, bool resume) {
  in_stage("config", [&] {
    config.validate();
    return 0;
  });
  PipelineResult result;
  result.dir = config.output_dir.empty() ? default_output_dir() : config.output_dir;

  result.stages.push_back(in_stage("train", [&] { return train_stage(config, result.dir, resume); }));
  result.stages.push_back(in_stage("mine", [&] {
    return mine_stage(result.dir, config.min_support, config.max_size, resume);
  }));
  result.stages.push_back(
      in_stage("rank", [&] { return rank_stage(result.dir, config.ranking, config.top, resume); }));

  in_stage("manifest", [&] {
    nlohmann::ordered_json manifest;
    manifest["tool"] = "kert";
    manifest["version"] = kVersion;
    manifest["config"] = config.to_text();
    manifest["config_hash"] = result.stages.back().config_hash;
    manifest["stages"] = nlohmann::json::array();
    for (const auto& s : result.stages) {
      manifest["stages"].push_back(
          {{"stage", s.stage}, {"config_hash", s.config_hash}, {"seconds", s.seconds},
           {"reused", s.reused}});
    }
    manifest["sampler"] = {{"burn_in", config.model.burn_in},
                           {"sweeps", config.model.total_sweeps},
                           {"seed", config.model.seed}};
    write_file(RunLayout{result.dir}.manifest(),
               [&](std::ostream& out) { out << manifest.dump(2) << '\n'; });
    return 0;
  });
  return result;
}

}  // namespace kert
