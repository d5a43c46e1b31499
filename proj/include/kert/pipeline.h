#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "kert/config.h"
#include "kert/error.h"
#include "kert/types.h"

namespace kert {

// A stage failure, prefixed with the stage name.
class StageError : public Error {
 public:
  StageError(std::string stage, const std::string& cause)
      : Error(stage + ": " + cause), stage_(std::move(stage)) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

// File layout of a run directory.
struct RunLayout {
  std::filesystem::path dir;

  std::filesystem::path labeled() const { return dir / "labeled.txt"; }
  std::filesystem::path phi() const { return dir / "phi.tsv"; }
  std::filesystem::path theta() const { return dir / "theta.tsv"; }
  std::filesystem::path candidates(TopicId t) const {
    return dir / ("candidates_topic_" + std::to_string(t) + ".tsv");
  }
  std::filesystem::path ranked_tsv(TopicId t) const {
    return dir / ("ranked_topic_" + std::to_string(t) + ".tsv");
  }
  std::filesystem::path ranked_jsonl(TopicId t) const {
    return dir / ("ranked_topic_" + std::to_string(t) + ".jsonl");
  }
  std::filesystem::path manifest() const { return dir / "manifest.json"; }
};

struct StageRecord {
  std::string stage;
  std::string config_hash;
  double seconds = 0;
  bool reused = false;
};

// Each stage writes its artifacts under dir and returns its config hash.
// With resume set, an existing artifact whose hash matches is reused and
// one whose hash differs raises StaleArtifactError.
StageRecord train_stage(const RunConfig& config, const std::filesystem::path& dir,
                        bool resume = false);
// Mines every foreground topic of dir/labeled.txt.
StageRecord mine_stage(const std::filesystem::path& dir, std::size_t min_support,
                       std::size_t max_size, bool resume = false);
// Ranks the candidates in dir. Refuses candidates mined from a different
// labeled corpus than the one present.
StageRecord rank_stage(const std::filesystem::path& dir, const RankingConfig& ranking,
                       std::size_t top, bool resume = false);

struct PipelineResult {
  std::filesystem::path dir;
  std::vector<StageRecord> stages;
};

// train -> mine -> rank, then writes dir/manifest.json with the config,
// stage hashes and timings. Failures surface as StageError.
PipelineResult run_pipeline(const RunConfig& config, bool resume = false);

}  // namespace kert
