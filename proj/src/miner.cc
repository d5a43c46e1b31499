#include "kert/miner.h"

#include <algorithm>
#include <iterator>
#include <map>

#include "kert/error.h"

namespace kert {
namespace {

using TidList = std::vector<std::uint32_t>;

struct Item {
  WordId word;
  TidList tids;
};

class Eclat {
 public:
  Eclat(TopicId topic, std::size_t min_support, std::size_t max_size,
        std::vector<CandidateKeyphrase>& out)
      : topic_(topic), min_support_(min_support), max_size_(max_size), out_(out) {}

  // items are sorted by word id; every entry already meets min_support.
  void grow(Phrase& prefix, const std::vector<Item>& items) {
    for (std::size_t i = 0; i < items.size(); ++i) {
      prefix.push_back(items[i].word);
      out_.push_back({prefix, items[i].tids.size(), topic_});
      if (prefix.size() < max_size_) {
        std::vector<Item> extensions;
        for (std::size_t j = i + 1; j < items.size(); ++j) {
          TidList shared;
          std::set_intersection(items[i].tids.begin(), items[i].tids.end(),
                                items[j].tids.begin(), items[j].tids.end(),
                                std::back_inserter(shared));
          if (shared.size() >= min_support_) extensions.push_back({items[j].word, std::move(shared)});
        }
        if (!extensions.empty()) grow(prefix, extensions);
      }
      prefix.pop_back();
    }
  }

 private:
  TopicId topic_;
  std::size_t min_support_;
  std::size_t max_size_;
  std::vector<CandidateKeyphrase>& out_;
};

}  // namespace

std::vector<TopicTransactions> build_transactions(const LabeledCorpus& labeled) {
  const auto k1 = static_cast<std::size_t>(labeled.topics) + 1;
  std::vector<TopicTransactions> out(k1);
  for (std::size_t t = 0; t < k1; ++t) out[t].topic = static_cast<TopicId>(t);

  std::vector<Phrase> per_topic(k1);
  for (const auto& title : labeled.corpus.titles) {
    const auto& labels = labeled.labels.at(title.doc_id);
    for (auto& words : per_topic) words.clear();
    for (std::size_t i = 0; i < title.tokens.size(); ++i) {
      per_topic.at(static_cast<std::size_t>(labels[i])).push_back(title.tokens[i]);
    }
    for (std::size_t t = 0; t < k1; ++t) {
      auto& words = per_topic[t];
      if (words.empty()) continue;
      std::sort(words.begin(), words.end());
      words.erase(std::unique(words.begin(), words.end()), words.end());
      out[t].transactions.push_back({title.doc_id, words});
    }
  }
  return out;
}

std::vector<CandidateKeyphrase> mine_candidates(const TopicTransactions& txns,
                                                std::size_t min_support, std::size_t max_size) {
  if (min_support == 0) throw ConfigError("min support must be >= 1");
  if (max_size == 0) throw ConfigError("max phrase size must be >= 1");

  std::map<WordId, TidList> vertical;
  for (std::size_t tid = 0; tid < txns.transactions.size(); ++tid) {
    for (WordId w : txns.transactions[tid].words) {
      vertical[w].push_back(static_cast<std::uint32_t>(tid));
    }
  }
  std::vector<Item> frequent;
  for (auto& [word, tids] : vertical) {
    if (tids.size() >= min_support) frequent.push_back({word, std::move(tids)});
  }

  std::vector<CandidateKeyphrase> out;
  Phrase prefix;
  Eclat(txns.topic, min_support, max_size, out).grow(prefix, frequent);
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.words.size() != b.words.size()) return a.words.size() < b.words.size();
    return a.words < b.words;
  });
  return out;
}

}  // namespace kert
