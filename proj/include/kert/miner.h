#pragma once

#include <cstddef>
#include <vector>

#include "kert/topic_model.h"
#include "kert/types.h"

namespace kert {

// The distinct words of one title that carry a given topic label.
struct Transaction {
  std::size_t doc_id = 0;
  Phrase words;  // sorted, unique, non-empty

  bool operator==(const Transaction&) const = default;
};

struct TopicTransactions {
  TopicId topic = 0;
  std::vector<Transaction> transactions;

  // |D_t|: titles with at least one word labeled with this topic.
  std::size_t d_t_size() const { return transactions.size(); }
};

struct CandidateKeyphrase {
  Phrase words;
  std::size_t freq = 0;  // number of topic transactions containing every word
  TopicId topic = 0;

  bool operator==(const CandidateKeyphrase&) const = default;
};

// Returns topics + 1 collections indexed by topic id; entry 0 holds the
// background word sets, which are only used as a reference for purity.
std::vector<TopicTransactions> build_transactions(const LabeledCorpus& labeled);

// Every word set of size 1..max_size contained in at least min_support
// transactions, with exact supports. Output is sorted by size, then by word
// ids. Throws ConfigError when min_support or max_size is zero.
std::vector<CandidateKeyphrase> mine_candidates(const TopicTransactions& txns,
                                                std::size_t min_support, std::size_t max_size);

}  // namespace kert
