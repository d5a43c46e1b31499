#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "kert/corpus.h"
#include "kert/ranker.h"
#include "kert/topic_model.h"

namespace kert {

// Everything a pipeline run depends on. The key-value text form uses the
// same names as the CLI flags with '-' spelled '_'.
struct RunConfig {
  std::filesystem::path input;
  std::filesystem::path stopwords;
  TokenizerOptions tokenizer;
  ModelConfig model;
  std::size_t min_support = 5;
  std::size_t max_size = 5;
  RankingConfig ranking;
  std::size_t top = 0;  // 0 keeps every ranked phrase
  std::filesystem::path output_dir;
  bool write_matrices = false;

  // Throws ConfigError for unknown keys or unparsable values.
  void set(std::string_view key, std::string_view value);
  void validate() const;
  // Canonical "key = value" lines in a fixed order.
  std::string to_text() const;
};

// Parses "key = value" lines; '#' starts a comment. Errors carry line numbers.
RunConfig parse_run_config(std::istream& in, const std::string& source, RunConfig base = {});
RunConfig load_run_config(const std::filesystem::path& path, RunConfig base = {});

// Output directory when none is configured: $KERT_OUTPUT_DIR, else "kert_out".
std::filesystem::path default_output_dir();

// Stage fingerprints. Each chains the upstream stage's hash, so any change
// upstream invalidates everything downstream. The train hash covers input
// and stopword file contents rather than their paths.
std::string train_config_hash(const RunConfig& config);
std::string mine_config_hash(std::string_view upstream, std::size_t min_support,
                             std::size_t max_size);
std::string rank_config_hash(std::string_view upstream, const RankingConfig& ranking,
                             std::size_t top);

}  // namespace kert
