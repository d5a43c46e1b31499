#include "kert/ranker.h"

#include <algorithm>
#include <cmath>
#include <iterator>

#include "kert/error.h"

namespace kert {

Variant parse_variant(std::string_view name) {
  static constexpr std::pair<std::string_view, Variant> kNames[] = {
      {"full", Variant::kFull},        {"no_cov", Variant::kNoCov},
      {"no_pur", Variant::kNoPur},     {"no_phr", Variant::kNoPhr},
      {"no_com", Variant::kNoCom},     {"cov_only", Variant::kCovOnly},
      {"pur_only", Variant::kPurOnly}, {"cov_pur", Variant::kCovPur},
  };
  for (const auto& [n, v] : kNames) {
    if (n == name) return v;
  }
  throw ConfigError("unknown ranking variant '" + std::string(name) + "'");
}

std::string_view variant_name(Variant variant) {
  switch (variant) {
    case Variant::kFull: return "full";
    case Variant::kNoCov: return "no_cov";
    case Variant::kNoPur: return "no_pur";
    case Variant::kNoPhr: return "no_phr";
    case Variant::kNoCom: return "no_com";
    case Variant::kCovOnly: return "cov_only";
    case Variant::kPurOnly: return "pur_only";
    case Variant::kCovPur: return "cov_pur";
  }
  return "unknown";
}

bool uses_completeness_filter(Variant variant) {
  return variant == Variant::kFull || variant == Variant::kNoCov || variant == Variant::kNoPur ||
         variant == Variant::kNoPhr;
}

void RankingConfig::validate() const {
  if (!(gamma >= 0 && gamma <= 1)) throw ConfigError("gamma must lie in [0, 1]");
  if (!(omega >= 0 && omega <= 1)) throw ConfigError("omega must lie in [0, 1]");
}

SupportIndex::SupportIndex(const TopicTransactions& txns) : topic_(txns.topic) {
  transactions_.reserve(txns.transactions.size());
  for (std::size_t tid = 0; tid < txns.transactions.size(); ++tid) {
    transactions_.push_back(txns.transactions[tid].words);
    for (WordId w : txns.transactions[tid].words) {
      postings_[w].push_back(static_cast<std::uint32_t>(tid));
    }
  }
}

std::vector<std::uint32_t> SupportIndex::covering(std::span<const WordId> words) const {
  std::vector<std::uint32_t> tids;
  if (words.empty()) {
    tids.resize(transactions_.size());
    for (std::size_t i = 0; i < tids.size(); ++i) tids[i] = static_cast<std::uint32_t>(i);
    return tids;
  }
  std::vector<const std::vector<std::uint32_t>*> lists;
  for (WordId w : words) {
    auto it = postings_.find(w);
    if (it == postings_.end()) return {};
    lists.push_back(&it->second);
  }
  std::sort(lists.begin(), lists.end(), [](auto* a, auto* b) { return a->size() < b->size(); });
  tids = *lists.front();
  for (std::size_t i = 1; i < lists.size() && !tids.empty(); ++i) {
    std::vector<std::uint32_t> next;
    std::set_intersection(tids.begin(), tids.end(), lists[i]->begin(), lists[i]->end(),
                          std::back_inserter(next));
    tids = std::move(next);
  }
  return tids;
}

std::size_t SupportIndex::support(std::span<const WordId> words) const {
  if (words.size() == 1) return unigram_support(words.front());
  return covering(words).size();
}

std::size_t SupportIndex::unigram_support(WordId word) const {
  auto it = postings_.find(word);
  return it == postings_.end() ? 0 : it->second.size();
}

std::size_t SupportIndex::best_extension_support(std::span<const WordId> words) const {
  std::unordered_map<WordId, std::size_t> counts;
  for (std::uint32_t tid : covering(words)) {
    for (WordId w : transactions_[tid]) {
      if (!std::binary_search(words.begin(), words.end(), w)) ++counts[w];
    }
  }
  std::size_t best = 0;
  for (const auto& [w, c] : counts) best = std::max(best, c);
  return best;
}

TopicContext::TopicContext(std::span<const TopicTransactions> all_topics) {
  indexes_.reserve(all_topics.size());
  for (std::size_t t = 0; t < all_topics.size(); ++t) {
    if (all_topics[t].topic != static_cast<TopicId>(t)) {
      throw ConfigError("topic transactions must be indexed by topic id");
    }
    indexes_.emplace_back(all_topics[t]);
  }
  if (indexes_.empty()) throw ConfigError("topic context needs at least the background topic");
}

double coverage(const CandidateKeyphrase& p, const SupportIndex& topic) {
  if (topic.num_transactions() == 0) {
    throw UndefinedTopicError("topic " + std::to_string(topic.topic()) + " has no word sets");
  }
  return static_cast<double>(p.freq) / static_cast<double>(topic.num_transactions());
}

double purity(const CandidateKeyphrase& p, const TopicContext& context) {
  const auto& own = context.index(p.topic);
  const auto f_t = static_cast<double>(p.freq);
  const auto d_t = static_cast<double>(own.num_transactions());
  double best = 0;
  for (TopicId other = 0; other <= context.topics(); ++other) {
    if (other == p.topic) continue;
    const auto& ref = context.index(other);
    const double rate = (f_t + static_cast<double>(ref.support(p.words))) /
                        (d_t + static_cast<double>(ref.num_transactions()));
    best = std::max(best, rate);
  }
  // With no reference topic at all the phrase is trivially pure.
  if (best == 0) return 0;
  return std::log(f_t / d_t) - std::log(best);
}

double phraseness(const CandidateKeyphrase& p, const SupportIndex& topic) {
  if (p.words.size() <= 1) return 0;
  const auto d_t = static_cast<double>(topic.num_transactions());
  double independent = 0;
  for (WordId w : p.words) {
    const std::size_t f_w = topic.unigram_support(w);
    if (f_w == 0) throw InconsistentCountsError("phrase word missing from its topic");
    independent += std::log(static_cast<double>(f_w) / d_t);
  }
  return std::log(static_cast<double>(p.freq) / d_t) - independent;
}

double completeness(const CandidateKeyphrase& p, const SupportIndex& topic) {
  if (p.freq == 0) throw InconsistentCountsError("completeness of an unsupported phrase");
  return 1.0 - static_cast<double>(topic.best_extension_support(p.words)) /
                   static_cast<double>(p.freq);
}

Measures measure(const CandidateKeyphrase& p, const TopicContext& context) {
  const auto& own = context.index(p.topic);
  return {coverage(p, own), purity(p, context), phraseness(p, own), completeness(p, own)};
}

bool is_filtered(const Measures& m, const RankingConfig& config) {
  return uses_completeness_filter(config.variant) && m.com <= config.gamma;
}

double combined_score(const Measures& m, const RankingConfig& config) {
  if (is_filtered(m, config)) return 0;
  const double w = config.omega;
  switch (config.variant) {
    case Variant::kFull:
    case Variant::kNoCom:
      return m.cov * ((1 - w) * m.pur + w * m.phr);
    case Variant::kNoCov:
      return (1 - w) * m.pur + w * m.phr;
    case Variant::kNoPur:
      return m.cov * m.phr;
    case Variant::kNoPhr:
    case Variant::kCovPur:
      return m.cov * m.pur;
    case Variant::kCovOnly:
      return m.cov;
    case Variant::kPurOnly:
      return m.pur;
  }
  return 0;
}

PhraseFormatter::PhraseFormatter(const Corpus& corpus)
    : vocabulary_(&corpus.vocabulary), frequency_(corpus.word_frequencies()) {}

std::string PhraseFormatter::render(std::span<const WordId> words) const {
  std::vector<WordId> order(words.begin(), words.end());
  std::sort(order.begin(), order.end(), [&](WordId a, WordId b) {
    if (frequency_.at(a) != frequency_.at(b)) return frequency_[a] > frequency_[b];
    return vocabulary_->word(a) < vocabulary_->word(b);
  });
  std::string out;
  for (WordId w : order) {
    if (!out.empty()) out.push_back(' ');
    out += vocabulary_->word(w);
  }
  return out;
}

std::vector<ScoredKeyphrase> rank_topic(std::span<const CandidateKeyphrase> candidates,
                                        const TopicContext& context,
                                        const RankingConfig& config,
                                        const PhraseFormatter& formatter) {
  config.validate();
  std::vector<ScoredKeyphrase> ranked;
  ranked.reserve(candidates.size());
  for (const auto& p : candidates) {
    const Measures m = measure(p, context);
    ranked.push_back({p, formatter.render(p.words), m.cov, m.pur, m.phr, m.com,
                      combined_score(m, config), is_filtered(m, config)});
  }
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.filtered != b.filtered) return !a.filtered;
    if (a.score != b.score) return a.score > b.score;
    if (a.candidate.freq != b.candidate.freq) return a.candidate.freq > b.candidate.freq;
    if (a.surface != b.surface) return a.surface < b.surface;
    return a.candidate.words < b.candidate.words;
  });
  return ranked;
}

}  // namespace kert
