#include "kert/eval.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <iterator>
#include <set>
#include <tuple>
#include <sstream>
#include <unordered_map>

#include "kert/error.h"

namespace kert {

std::string normalize_phrase(std::string_view phrase) {
  std::istringstream in{std::string(phrase)};
  std::vector<std::string> words{std::istream_iterator<std::string>(in), {}};
  std::sort(words.begin(), words.end());
  std::string out;
  for (const auto& w : words) {
    if (!out.empty()) out.push_back(' ');
    out += w;
  }
  return out;
}

double weighted_kappa(std::span<const std::pair<int, int>> pairs) {
  constexpr int kLevels = 5;
  if (pairs.empty()) throw EvalError("weighted kappa needs at least one shared item");
  std::array<std::array<double, kLevels>, kLevels> observed{};
  std::array<double, kLevels> row{};
  std::array<double, kLevels> col{};
  const double n = static_cast<double>(pairs.size());
  for (const auto& [a, b] : pairs) {
    if (a < 1 || a > kLevels || b < 1 || b > kLevels) throw EvalError("score outside 1..5");
    observed[a - 1][b - 1] += 1 / n;
    row[a - 1] += 1 / n;
    col[b - 1] += 1 / n;
  }
  double obs = 0;
  double exp = 0;
  for (int i = 0; i < kLevels; ++i) {
    for (int j = 0; j < kLevels; ++j) {
      const double w = std::abs(i - j) / double(kLevels - 1);
      obs += w * observed[i][j];
      exp += w * row[i] * col[j];
    }
  }
  if (exp <= 0) return 1.0;
  return 1.0 - obs / exp;
}

std::map<std::string, double> judge_agreement_weights(std::span<const JudgeScore> rows,
                                                      double epsilon) {
  std::map<std::string, std::map<std::pair<TopicId, std::string>, int>> by_judge;
  for (const auto& r : rows) by_judge[r.judge][{r.topic, normalize_phrase(r.phrase)}] = r.score;

  std::map<std::string, double> weights;
  for (const auto& [judge, items] : by_judge) {
    double total = 0;
    int compared = 0;
    for (const auto& [other, other_items] : by_judge) {
      if (other == judge) continue;
      std::vector<std::pair<int, int>> shared;
      for (const auto& [key, s] : items) {
        if (auto it = other_items.find(key); it != other_items.end()) shared.emplace_back(s, it->second);
      }
      if (shared.empty()) continue;
      total += weighted_kappa(shared);
      ++compared;
    }
    weights[judge] = compared == 0 ? 1.0 : std::max(epsilon, total / compared);
  }
  return weights;
}

double agreement_weighted_score(std::span<const std::pair<std::string, int>> scores,
                                const std::map<std::string, double>& weights) {
  if (scores.empty()) throw EvalError("no judge scores for phrase");
  double num = 0;
  double den = 0;
  for (const auto& [judge, s] : scores) {
    auto it = weights.find(judge);
    if (it == weights.end()) throw EvalError("no agreement weight for judge '" + judge + "'");
    num += it->second * s;
    den += it->second;
  }
  if (!(den > 0)) throw EvalError("judge weights sum to zero");
  return num / den;
}

JudgeTable::JudgeTable(std::vector<JudgeScore> rows, double epsilon) {
  std::map<std::pair<TopicId, std::string>, std::vector<std::pair<std::string, int>>> grouped;
  std::set<std::tuple<TopicId, std::string, std::string>> seen;
  for (auto& r : rows) {
    if (r.score < 1 || r.score > 5) {
      throw EvalError("score " + std::to_string(r.score) + " outside 1..5 for '" + r.phrase + "'");
    }
    r.phrase = normalize_phrase(r.phrase);
    if (!seen.emplace(r.topic, r.phrase, r.judge).second) {
      throw EvalError("duplicate judgment: topic " + std::to_string(r.topic) + ", '" + r.phrase +
                      "', judge " + r.judge);
    }
    grouped[{r.topic, r.phrase}].emplace_back(r.judge, r.score);
  }
  weights_ = judge_agreement_weights(rows, epsilon);
  for (const auto& [key, scores] : grouped) scores_[key] = agreement_weighted_score(scores, weights_);
}

bool JudgeTable::contains(TopicId topic, std::string_view phrase) const {
  return scores_.contains({topic, normalize_phrase(phrase)});
}

double JudgeTable::score(TopicId topic, std::string_view phrase) const {
  auto it = scores_.find({topic, normalize_phrase(phrase)});
  if (it == scores_.end()) {
    throw EvalError("phrase '" + std::string(phrase) + "' not judged for topic " +
                    std::to_string(topic));
  }
  return it->second;
}

std::vector<double> JudgeTable::pooled_scores(TopicId topic) const {
  std::vector<double> pool;
  for (auto it = scores_.lower_bound({topic, std::string()});
       it != scores_.end() && it->first.first == topic; ++it) {
    pool.push_back(it->second);
  }
  std::sort(pool.begin(), pool.end(), std::greater<>());
  return pool;
}

double nkqm_at_k(std::span<const TopicRanking> rankings, const JudgeTable& judged, std::size_t K) {
  if (K == 0) throw EvalError("K must be >= 1");
  if (rankings.empty()) throw EvalError("no topic rankings to evaluate");
  double total = 0;
  for (const auto& ranking : rankings) {
    const auto pool = judged.pooled_scores(ranking.topic);
    if (pool.size() < K) {
      throw EvalError("K = " + std::to_string(K) + " exceeds the " + std::to_string(pool.size()) +
                      " judged phrases of topic " + std::to_string(ranking.topic));
    }
    double ideal = 0;
    for (std::size_t j = 0; j < K; ++j) ideal += pool[j] / std::log2(double(j) + 2);
    double dcg = 0;
    const std::size_t depth = std::min(K, ranking.phrases.size());
    for (std::size_t j = 0; j < depth; ++j) {
      dcg += judged.score(ranking.topic, ranking.phrases[j]) / std::log2(double(j) + 2);
    }
    total += dcg / ideal;
  }
  return total / static_cast<double>(rankings.size());
}

JointCounts mi_joint_counts(std::span<const std::vector<Phrase>> rankings, const Corpus& corpus,
                            const CategoryLabels& labels, std::size_t K) {
  if (K == 0) throw EvalError("K must be >= 1");
  if (rankings.empty()) throw EvalError("no topic rankings to evaluate");
  if (corpus.titles.empty()) throw EvalError("empty corpus");
  if (labels.by_doc.size() != corpus.titles.size()) {
    throw EvalError("category labels cover " + std::to_string(labels.by_doc.size()) +
                    " titles, corpus has " + std::to_string(corpus.titles.size()));
  }
  const std::size_t T = rankings.size();

  // Best (rank, topic) per pooled phrase; lexicographic pair order breaks
  // rank ties toward the earlier topic.
  std::map<Phrase, std::pair<std::size_t, std::size_t>> owner;
  for (std::size_t t = 0; t < T; ++t) {
    const std::size_t depth = std::min(K, rankings[t].size());
    for (std::size_t j = 0; j < depth; ++j) {
      Phrase p = rankings[t][j];
      std::sort(p.begin(), p.end());
      p.erase(std::unique(p.begin(), p.end()), p.end());
      if (p.empty()) continue;
      auto [it, inserted] = owner.try_emplace(std::move(p), j, t);
      if (!inserted) it->second = std::min(it->second, std::make_pair(j, t));
    }
  }

  std::unordered_map<WordId, std::vector<std::uint32_t>> postings;
  for (std::size_t d = 0; d < corpus.titles.size(); ++d) {
    Phrase words = corpus.titles[d].tokens;
    std::sort(words.begin(), words.end());
    words.erase(std::unique(words.begin(), words.end()), words.end());
    for (WordId w : words) postings[w].push_back(static_cast<std::uint32_t>(d));
  }
  // Topics of the labeled phrases contained in each title.
  std::vector<std::vector<std::size_t>> contained(corpus.titles.size());
  for (const auto& [phrase, best] : owner) {
    std::vector<std::uint32_t> docs;
    bool first = true;
    for (WordId w : phrase) {
      auto it = postings.find(w);
      if (it == postings.end()) {
        docs.clear();
        break;
      }
      if (first) {
        docs = it->second;
        first = false;
      } else {
        std::vector<std::uint32_t> next;
        std::set_intersection(docs.begin(), docs.end(), it->second.begin(), it->second.end(),
                              std::back_inserter(next));
        docs = std::move(next);
      }
      if (docs.empty()) break;
    }
    for (auto d : docs) contained[d].push_back(best.second);
  }

  JointCounts out;
  std::set<std::string> names(labels.by_doc.begin(), labels.by_doc.end());
  out.categories.assign(names.begin(), names.end());
  std::map<std::string, std::size_t> column;
  for (std::size_t c = 0; c < out.categories.size(); ++c) column[out.categories[c]] = c;
  out.counts = Matrix(T, out.categories.size());

  for (std::size_t d = 0; d < corpus.titles.size(); ++d) {
    const std::size_t c = column.at(labels.by_doc[d]);
    const auto& topics = contained[d];
    if (topics.empty()) {
      for (std::size_t t = 0; t < T; ++t) out.counts.at(t, c) += 1.0 / static_cast<double>(T);
    } else {
      for (std::size_t t : topics) out.counts.at(t, c) += 1.0 / static_cast<double>(topics.size());
    }
  }
  return out;
}

double mutual_information(const Matrix& joint) {
  double total = 0;
  for (double v : joint.values) {
    if (v < 0) throw EvalError("negative joint count");
    total += v;
  }
  if (total <= 0) throw EvalError("empty joint table");
  std::vector<double> pt(joint.rows, 0.0);
  std::vector<double> pc(joint.cols, 0.0);
  for (std::size_t t = 0; t < joint.rows; ++t) {
    for (std::size_t c = 0; c < joint.cols; ++c) {
      pt[t] += joint.at(t, c) / total;
      pc[c] += joint.at(t, c) / total;
    }
  }
  double mi = 0;
  for (std::size_t t = 0; t < joint.rows; ++t) {
    for (std::size_t c = 0; c < joint.cols; ++c) {
      const double p = joint.at(t, c) / total;
      if (p > 0) mi += p * std::log2(p / (pt[t] * pc[c]));
    }
  }
  return std::max(0.0, mi);
}

double mi_at_k(std::span<const std::vector<Phrase>> rankings, const Corpus& corpus,
               const CategoryLabels& labels, std::size_t K) {
  return mutual_information(mi_joint_counts(rankings, corpus, labels, K).counts);
}

}  // namespace kert
