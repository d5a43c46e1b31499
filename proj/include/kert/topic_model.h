#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "kert/corpus.h"
#include "kert/rng.h"
#include "kert/types.h"

namespace kert {

struct ModelConfig {
  int topics = 5;        // k, number of foreground topics
  double alpha = 1.0;    // Dirichlet prior on per-title topic mixtures
  double beta = 0.07;    // Dirichlet prior on topic word distributions
  double lambda = 0.1;   // prior probability that a token is foreground
  int burn_in = 200;
  int total_sweeps = 500;
  std::uint64_t seed = 1;

  // Throws ConfigError.
  void validate() const;
};

// Row-major dense matrix of doubles.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> values;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), values(r * c, 0.0) {}
  double& at(std::size_t r, std::size_t c) { return values[r * cols + c]; }
  double at(std::size_t r, std::size_t c) const { return values[r * cols + c]; }
  std::span<const double> row(std::size_t r) const { return {values.data() + r * cols, cols}; }
};

// Per-token switch and topic assignments plus the sufficient statistics of
// the collapsed sampler. Tokens are laid out in document order; the tokens
// of title d occupy [doc_offsets[d], doc_offsets[d + 1]).
struct AssignmentState {
  int topics = 0;
  std::size_t vocab_size = 0;
  std::vector<std::size_t> doc_offsets;
  std::vector<std::uint8_t> y;  // 0 background, 1 foreground
  std::vector<TopicId> z;       // 0 iff y == 0, else 1..topics

  std::vector<std::int64_t> count_topic_word;   // (topics + 1) x vocab_size
  std::vector<std::int64_t> count_doc_topic;    // docs x topics, column t-1 is topic t
  std::vector<std::int64_t> count_topic_total;  // topics + 1
  std::vector<std::int64_t> count_doc_foreground;
  std::vector<std::int64_t> count_doc_background;

  std::size_t num_docs() const { return doc_offsets.empty() ? 0 : doc_offsets.size() - 1; }
  std::size_t num_tokens() const { return z.size(); }

  std::int64_t topic_word(TopicId t, WordId w) const {
    return count_topic_word[static_cast<std::size_t>(t) * vocab_size + w];
  }
  std::int64_t doc_topic(std::size_t d, TopicId t) const {
    return count_doc_topic[d * static_cast<std::size_t>(topics) + (t - 1)];
  }

  bool operator==(const AssignmentState&) const = default;
};

// Builds a state from explicit assignments, tallying every count from
// scratch. Throws ConfigError when y/z disagree in size or domain.
AssignmentState state_from_assignments(const Corpus& corpus, int topics,
                                       std::vector<std::uint8_t> y, std::vector<TopicId> z);

// Throws InconsistentCountsError when any stored count differs from a full
// recount over (y, z).
void verify_counts(const AssignmentState& state, const Corpus& corpus);

// y ~ Bernoulli(lambda) and, for foreground tokens, z uniform over 1..k.
AssignmentState init_assignments(const Corpus& corpus, const ModelConfig& config, Rng& rng);

// Resamples every token once, in document order, from its collapsed
// conditional with that token's own contribution removed.
void gibbs_sweep(AssignmentState& state, const Corpus& corpus, const ModelConfig& config,
                 Rng& rng);

struct LabeledCorpus {
  Corpus corpus;
  int topics = 0;
  // One MAP label per token, shaped like corpus.titles[d].tokens.
  std::vector<std::vector<TopicId>> labels;
  std::optional<Matrix> phi_hat;    // (topics + 1) x V
  std::optional<Matrix> theta_hat;  // docs x topics
  int burn_in = 0;
  int total_sweeps = 0;
};

// Full sampler run. The MAP label of a token is the mode of its
// post-burn-in sample histogram, ties going to the lower label.
LabeledCorpus run_inference(const Corpus& corpus, const ModelConfig& config);

// The sweeps and estimates of run_inference from a given starting state.
LabeledCorpus run_chain(const Corpus& corpus, const ModelConfig& config, AssignmentState state,
                        Rng& rng);

}  // namespace kert
