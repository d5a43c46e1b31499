#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kert/corpus.h"
#include "kert/topic_model.h"
#include "kert/types.h"

namespace kert {

// Phrases are order-free: "vector support machines" and "support vector
// machines" name the same judged item. Returns the words sorted and joined.
std::string normalize_phrase(std::string_view phrase);

struct JudgeScore {
  TopicId topic = 0;
  std::string phrase;
  std::string judge;
  int score = 0;  // 1..5
};

// Linearly weighted Cohen's kappa between two raters on a 1..5 scale.
// pairs holds (rater a, rater b) scores for the items both rated. Returns 1
// when the expected disagreement is zero.
double weighted_kappa(std::span<const std::pair<int, int>> pairs);

// Per-judge weight: mean weighted kappa against every other judge over the
// items both judged, floored at epsilon. A judge with no overlap gets 1.
std::map<std::string, double> judge_agreement_weights(std::span<const JudgeScore> rows,
                                                      double epsilon = 1e-3);

// Weighted mean of (judge, score) pairs. Throws EvalError on empty input or
// a judge without a weight.
double agreement_weighted_score(std::span<const std::pair<std::string, int>> scores,
                                const std::map<std::string, double>& weights);

// Judged pool indexed by (topic, normalized phrase).
class JudgeTable {
 public:
  // Throws EvalError on duplicate (topic, phrase, judge) rows or scores
  // outside 1..5.
  explicit JudgeTable(std::vector<JudgeScore> rows, double epsilon = 1e-3);

  const std::map<std::string, double>& weights() const { return weights_; }
  bool contains(TopicId topic, std::string_view phrase) const;
  // Throws EvalError when the phrase was never judged for the topic.
  double score(TopicId topic, std::string_view phrase) const;
  // Agreement-weighted scores of every judged phrase of a topic, descending.
  std::vector<double> pooled_scores(TopicId topic) const;

 private:
  std::map<std::string, double> weights_;
  std::map<std::pair<TopicId, std::string>, double> scores_;
};

struct TopicRanking {
  TopicId topic = 0;
  std::vector<std::string> phrases;  // best first
};

// Mean over topics of DCG@K of the ranking divided by the DCG@K of the
// topic's best K pooled phrases. Throws EvalError for K = 0, an unjudged
// top-K phrase, or a pool smaller than K.
double nkqm_at_k(std::span<const TopicRanking> rankings, const JudgeTable& judged, std::size_t K);

struct CategoryLabels {
  std::vector<std::string> by_doc;  // category of title d
};

// Soft topic x category counts for MI_K. Rows follow the order of rankings.
struct JointCounts {
  Matrix counts;                        // T x C
  std::vector<std::string> categories;  // column names, sorted
};

// Each pooled top-K phrase is assigned to the topic where it ranks best
// (ties to the earlier topic). A title containing m of those phrases adds
// 1/m to (topic of each, category); a title containing none adds 1/T to
// every topic. Containment is order-free.
JointCounts mi_joint_counts(std::span<const std::vector<Phrase>> rankings, const Corpus& corpus,
                            const CategoryLabels& labels, std::size_t K);

// Mutual information in bits of a non-negative joint count table.
double mutual_information(const Matrix& joint);

double mi_at_k(std::span<const std::vector<Phrase>> rankings, const Corpus& corpus,
               const CategoryLabels& labels, std::size_t K);

}  // namespace kert
