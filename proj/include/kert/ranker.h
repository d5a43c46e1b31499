#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "kert/corpus.h"
#include "kert/miner.h"
#include "kert/types.h"

namespace kert {

// Which factors of the combined ranking function are active.
enum class Variant {
  kFull,     // completeness filter, cov * ((1 - omega) * pur + omega * phr)
  kNoCov,    // filter, (1 - omega) * pur + omega * phr
  kNoPur,    // filter, cov * phr
  kNoPhr,    // filter, cov * pur
  kNoCom,    // no filter, cov * ((1 - omega) * pur + omega * phr)
  kCovOnly,  // cov
  kPurOnly,  // pur
  kCovPur,   // cov * pur
};

// Accepts the snake_case names, e.g. "no_pur". Throws ConfigError.
Variant parse_variant(std::string_view name);
std::string_view variant_name(Variant variant);
bool uses_completeness_filter(Variant variant);

struct RankingConfig {
  double gamma = 0.5;  // completeness cutoff
  double omega = 0.5;  // weight of phraseness against purity
  Variant variant = Variant::kFull;

  void validate() const;
};

// Inverted index over one topic's word sets for exact support counting.
class SupportIndex {
 public:
  explicit SupportIndex(const TopicTransactions& txns);

  TopicId topic() const { return topic_; }
  std::size_t num_transactions() const { return transactions_.size(); }

  // Number of transactions containing every word of the (sorted) set.
  std::size_t support(std::span<const WordId> words) const;
  std::size_t unigram_support(WordId word) const;
  // max over w not in words of support(words + {w}); 0 if there is none.
  std::size_t best_extension_support(std::span<const WordId> words) const;

 private:
  std::vector<std::uint32_t> covering(std::span<const WordId> words) const;

  TopicId topic_;
  std::vector<Phrase> transactions_;
  std::unordered_map<WordId, std::vector<std::uint32_t>> postings_;
};

// Support indexes for the background and every foreground topic.
class TopicContext {
 public:
  explicit TopicContext(std::span<const TopicTransactions> all_topics);

  // Number of foreground topics k; index() accepts 0..k.
  int topics() const { return static_cast<int>(indexes_.size()) - 1; }
  const SupportIndex& index(TopicId t) const { return indexes_.at(static_cast<std::size_t>(t)); }

 private:
  std::vector<SupportIndex> indexes_;
};

struct Measures {
  double cov = 0;
  double pur = 0;
  double phr = 0;
  double com = 0;
};

// f_t(p) / |D_t|. Throws UndefinedTopicError when the topic has no word sets.
double coverage(const CandidateKeyphrase& p, const SupportIndex& topic);

// log(f_t(p)/|D_t|) - log max_{t' != t} (f_t(p) + f_t'(p)) / (|D_t| + |D_t'|),
// with t' ranging over the background and the other foreground topics.
double purity(const CandidateKeyphrase& p, const TopicContext& context);

// log(f_t(p)/|D_t|) - sum_w log(f_t(w)/|D_t|); exactly 0 for unigrams.
double phraseness(const CandidateKeyphrase& p, const SupportIndex& topic);

// 1 - max_w f_t(p + {w}) / f_t(p), counted exactly over all extensions.
double completeness(const CandidateKeyphrase& p, const SupportIndex& topic);

Measures measure(const CandidateKeyphrase& p, const TopicContext& context);

bool is_filtered(const Measures& m, const RankingConfig& config);
double combined_score(const Measures& m, const RankingConfig& config);

// Display form of a word set: words by descending corpus frequency, ties by
// surface string, joined by single spaces.
class PhraseFormatter {
 public:
  explicit PhraseFormatter(const Corpus& corpus);
  std::string render(std::span<const WordId> words) const;

 private:
  const Vocabulary* vocabulary_;
  std::vector<std::size_t> frequency_;
};

struct ScoredKeyphrase {
  CandidateKeyphrase candidate;
  std::string surface;
  double cov = 0;
  double pur = 0;
  double phr = 0;
  double com = 0;
  double score = 0;
  bool filtered = false;
};

// Scores one topic's candidates and orders them by descending score, then
// higher support, then surface string. Filtered phrases come last.
std::vector<ScoredKeyphrase> rank_topic(std::span<const CandidateKeyphrase> candidates,
                                        const TopicContext& context,
                                        const RankingConfig& config,
                                        const PhraseFormatter& formatter);

}  // namespace kert
