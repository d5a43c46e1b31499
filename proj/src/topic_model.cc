#include "kert/topic_model.h"

#include <cmath>
#include <string>
#include <utility>

#include "kert/error.h"

namespace kert {
namespace {

std::vector<std::size_t> offsets_of(const Corpus& corpus) {
  std::vector<std::size_t> offsets;
  offsets.reserve(corpus.titles.size() + 1);
  offsets.push_back(0);
  for (const auto& title : corpus.titles) offsets.push_back(offsets.back() + title.tokens.size());
  return offsets;
}

AssignmentState empty_state(const Corpus& corpus, int topics) {
  AssignmentState s;
  s.topics = topics;
  s.vocab_size = corpus.vocabulary.size();
  s.doc_offsets = offsets_of(corpus);
  const auto k1 = static_cast<std::size_t>(topics) + 1;
  s.count_topic_word.assign(k1 * s.vocab_size, 0);
  s.count_doc_topic.assign(corpus.titles.size() * static_cast<std::size_t>(topics), 0);
  s.count_topic_total.assign(k1, 0);
  s.count_doc_foreground.assign(corpus.titles.size(), 0);
  s.count_doc_background.assign(corpus.titles.size(), 0);
  return s;
}

void tally(AssignmentState& s, const Corpus& corpus) {
  for (std::size_t d = 0; d < corpus.titles.size(); ++d) {
    const auto& tokens = corpus.titles[d].tokens;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      const std::size_t pos = s.doc_offsets[d] + i;
      const TopicId t = s.z[pos];
      s.count_topic_word[static_cast<std::size_t>(t) * s.vocab_size + tokens[i]] += 1;
      s.count_topic_total[t] += 1;
      if (t == kBackgroundTopic) {
        s.count_doc_background[d] += 1;
      } else {
        s.count_doc_topic[d * s.topics + (t - 1)] += 1;
        s.count_doc_foreground[d] += 1;
      }
    }
  }
}

}  // namespace

void ModelConfig::validate() const {
  if (topics < 1) throw ConfigError("topics must be >= 1");
  if (!(alpha > 0)) throw ConfigError("alpha must be > 0");
  if (!(beta > 0)) throw ConfigError("beta must be > 0");
  if (!(lambda > 0 && lambda < 1)) throw ConfigError("lambda must lie in (0, 1)");
  if (burn_in < 0) throw ConfigError("burn-in must be >= 0");
  if (total_sweeps <= burn_in) throw ConfigError("sweeps must exceed burn-in");
}

AssignmentState state_from_assignments(const Corpus& corpus, int topics,
                                       std::vector<std::uint8_t> y, std::vector<TopicId> z) {
  if (topics < 1) throw ConfigError("topics must be >= 1");
  AssignmentState s = empty_state(corpus, topics);
  const std::size_t n = s.doc_offsets.back();
  if (y.size() != n || z.size() != n) {
    throw ConfigError("assignment length does not match token count");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (z[i] < 0 || z[i] > topics) throw ConfigError("topic label out of range");
    if ((y[i] == 0) != (z[i] == kBackgroundTopic) || y[i] > 1) {
      throw ConfigError("background switch disagrees with topic label");
    }
  }
  s.y = std::move(y);
  s.z = std::move(z);
  tally(s, corpus);
  return s;
}

void verify_counts(const AssignmentState& state, const Corpus& corpus) {
  const AssignmentState fresh = state_from_assignments(corpus, state.topics, state.y, state.z);
  if (fresh != state) throw InconsistentCountsError("sampler counts diverged from assignments");
}

AssignmentState init_assignments(const Corpus& corpus, const ModelConfig& config, Rng& rng) {
  config.validate();
  AssignmentState s = empty_state(corpus, config.topics);
  const std::size_t n = s.doc_offsets.back();
  s.y.resize(n);
  s.z.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const bool foreground = rng.bernoulli(config.lambda);
    s.y[i] = foreground ? 1 : 0;
    s.z[i] = foreground ? static_cast<TopicId>(1 + rng.below(config.topics)) : kBackgroundTopic;
  }
  tally(s, corpus);
  return s;
}

void gibbs_sweep(AssignmentState& s, const Corpus& corpus, const ModelConfig& config, Rng& rng) {
  const int k = s.topics;
  if (k != config.topics || s.vocab_size != corpus.vocabulary.size() ||
      s.num_docs() != corpus.titles.size()) {
    throw InconsistentCountsError("state shape does not match corpus and config");
  }
  const double vbeta = static_cast<double>(s.vocab_size) * config.beta;
  const double kalpha = k * config.alpha;
  std::vector<double> cumulative(static_cast<std::size_t>(k) + 1);

  for (std::size_t d = 0; d < corpus.titles.size(); ++d) {
    const auto& tokens = corpus.titles[d].tokens;
    std::int64_t* doc_topic = s.count_doc_topic.data() + d * k;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      const std::size_t pos = s.doc_offsets[d] + i;
      const WordId w = tokens[i];
      const TopicId old = s.z[pos];

      std::int64_t& tw = s.count_topic_word[static_cast<std::size_t>(old) * s.vocab_size + w];
      if (tw <= 0 || s.count_topic_total[old] <= 0) {
        throw InconsistentCountsError("negative count at token " + std::to_string(pos));
      }
      --tw;
      --s.count_topic_total[old];
      if (old == kBackgroundTopic) {
        --s.count_doc_background[d];
      } else {
        --doc_topic[old - 1];
        --s.count_doc_foreground[d];
      }

      double acc = (1.0 - config.lambda) * (s.topic_word(0, w) + config.beta) /
                   (s.count_topic_total[0] + vbeta);
      cumulative[0] = acc;
      const double doc_norm = s.count_doc_foreground[d] + kalpha;
      for (TopicId t = 1; t <= k; ++t) {
        acc += config.lambda * (doc_topic[t - 1] + config.alpha) / doc_norm *
               (s.topic_word(t, w) + config.beta) / (s.count_topic_total[t] + vbeta);
        cumulative[t] = acc;
      }

      const double u = rng.uniform() * acc;
      TopicId chosen = k;
      for (TopicId t = 0; t <= k; ++t) {
        if (u < cumulative[t]) {
          chosen = t;
          break;
        }
      }

      s.z[pos] = chosen;
      s.y[pos] = chosen == kBackgroundTopic ? 0 : 1;
      ++s.count_topic_word[static_cast<std::size_t>(chosen) * s.vocab_size + w];
      ++s.count_topic_total[chosen];
      if (chosen == kBackgroundTopic) {
        ++s.count_doc_background[d];
      } else {
        ++doc_topic[chosen - 1];
        ++s.count_doc_foreground[d];
      }
    }
  }
}

LabeledCorpus run_inference(const Corpus& corpus, const ModelConfig& config) {
  config.validate();
  Rng rng(config.seed);
  AssignmentState state = init_assignments(corpus, config, rng);
  return run_chain(corpus, config, std::move(state), rng);
}

LabeledCorpus run_chain(const Corpus& corpus, const ModelConfig& config, AssignmentState state,
                        Rng& rng) {
  config.validate();

  const int k = config.topics;
  const auto k1 = static_cast<std::size_t>(k) + 1;
  const std::size_t n = state.num_tokens();
  const std::size_t docs = corpus.titles.size();
  const std::size_t vocab = corpus.vocabulary.size();

  std::vector<std::uint32_t> histogram(n * k1, 0);
  std::vector<double> sum_topic_word(k1 * vocab, 0.0);
  std::vector<double> sum_topic_total(k1, 0.0);
  std::vector<double> sum_doc_topic(docs * k, 0.0);
  std::vector<double> sum_doc_foreground(docs, 0.0);

  for (int sweep = 0; sweep < config.total_sweeps; ++sweep) {
    gibbs_sweep(state, corpus, config, rng);
    if (sweep < config.burn_in) continue;
    for (std::size_t i = 0; i < n; ++i) ++histogram[i * k1 + state.z[i]];
    for (std::size_t j = 0; j < sum_topic_word.size(); ++j) sum_topic_word[j] += state.count_topic_word[j];
    for (std::size_t t = 0; t < k1; ++t) sum_topic_total[t] += state.count_topic_total[t];
    for (std::size_t j = 0; j < sum_doc_topic.size(); ++j) sum_doc_topic[j] += state.count_doc_topic[j];
    for (std::size_t d = 0; d < docs; ++d) sum_doc_foreground[d] += state.count_doc_foreground[d];
  }

  LabeledCorpus out;
  out.corpus = corpus;
  out.topics = k;
  out.burn_in = config.burn_in;
  out.total_sweeps = config.total_sweeps;
  out.labels.resize(docs);
  for (std::size_t d = 0; d < docs; ++d) {
    auto& labels = out.labels[d];
    labels.resize(corpus.titles[d].tokens.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
      const std::uint32_t* h = histogram.data() + (state.doc_offsets[d] + i) * k1;
      TopicId best = 0;
      for (TopicId t = 1; t <= k; ++t) {
        if (h[t] > h[best]) best = t;
      }
      labels[i] = best;
    }
  }

  const double samples = config.total_sweeps - config.burn_in;
  if (vocab > 0) {
    Matrix phi(k1, vocab);
    for (std::size_t t = 0; t < k1; ++t) {
      const double norm = sum_topic_total[t] / samples + vocab * config.beta;
      for (std::size_t w = 0; w < vocab; ++w) {
        phi.at(t, w) = (sum_topic_word[t * vocab + w] / samples + config.beta) / norm;
      }
    }
    out.phi_hat = std::move(phi);
  }
  Matrix theta(docs, k);
  for (std::size_t d = 0; d < docs; ++d) {
    const double norm = sum_doc_foreground[d] / samples + k * config.alpha;
    for (int t = 0; t < k; ++t) {
      theta.at(d, t) = (sum_doc_topic[d * k + t] / samples + config.alpha) / norm;
    }
  }
  out.theta_hat = std::move(theta);
  return out;
}

}  // namespace kert
