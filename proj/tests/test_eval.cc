#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include <gtest/gtest.h>

#include "kert/error.h"
#include "kert/eval.h"

namespace kert {
namespace {

TEST(NormalizePhrase, OrderFree) {
  EXPECT_EQ(normalize_phrase("vector support  machines"), "machines support vector");
  EXPECT_EQ(normalize_phrase("support vector machines"), normalize_phrase("machines vector support"));
}

TEST(Kappa, HandExample) {
  // Linear weights |i-j|/4; observed 1/12, expected 7/36.
  const std::vector<std::pair<int, int>> pairs{{1, 2}, {2, 2}, {3, 3}};
  EXPECT_NEAR(weighted_kappa(pairs), 4.0 / 7.0, 1e-15);
}

TEST(Kappa, PerfectAndDegenerate) {
  const std::vector<std::pair<int, int>> same{{1, 1}, {3, 3}, {5, 5}};
  EXPECT_DOUBLE_EQ(weighted_kappa(same), 1.0);
  const std::vector<std::pair<int, int>> constant{{4, 4}, {4, 4}};
  EXPECT_DOUBLE_EQ(weighted_kappa(constant), 1.0);
}

TEST(AgreementWeightedScore, Examples) {
  const std::map<std::string, double> equal{{"a", 1}, {"b", 1}, {"c", 1}};
  const std::vector<std::pair<std::string, int>> threes{{"a", 3}, {"b", 3}, {"c", 3}};
  const std::vector<std::pair<std::string, int>> spread{{"a", 1}, {"b", 3}, {"c", 5}};
  EXPECT_DOUBLE_EQ(agreement_weighted_score(threes, {{"a", 0.2}, {"b", 5}, {"c", 1}}), 3.0);
  EXPECT_DOUBLE_EQ(agreement_weighted_score(spread, equal), 3.0);
  const std::map<std::string, double> unequal{{"a", 1}, {"b", 2}, {"c", 3}};
  EXPECT_NE(agreement_weighted_score(spread, unequal), agreement_weighted_score(threes, unequal));
  const std::vector<std::pair<std::string, int>> two{{"a", 2}, {"b", 4}};
  EXPECT_DOUBLE_EQ(agreement_weighted_score(two, equal), 3.0);
}

TEST(AgreementWeightedScore, ScaleInvariant) {
  const std::vector<std::pair<std::string, int>> s{{"a", 1}, {"b", 4}, {"c", 5}};
  const std::map<std::string, double> w{{"a", 0.3}, {"b", 0.9}, {"c", 0.5}};
  std::map<std::string, double> scaled = w;
  for (auto& [_, v] : scaled) v *= 7.5;
  EXPECT_NEAR(agreement_weighted_score(s, w), agreement_weighted_score(s, scaled), 1e-14);
}

TEST(AgreementWeightedScore, Errors) {
  const std::vector<std::pair<std::string, int>> none;
  EXPECT_THROW(agreement_weighted_score(none, {}), EvalError);
  const std::vector<std::pair<std::string, int>> unknown{{"z", 3}};
  EXPECT_THROW(agreement_weighted_score(unknown, {{"a", 1}}), EvalError);
}

std::vector<JudgeScore> judge_rows() {
  // Three judges, topic 1, five phrases; judge c disagrees with a and b.
  const std::vector<std::string> phrases{"p one", "p two", "p three", "p four", "p five"};
  const int a[] = {5, 4, 3, 2, 1};
  const int b[] = {5, 4, 3, 1, 1};
  const int c[] = {1, 2, 3, 4, 5};
  std::vector<JudgeScore> rows;
  for (int i = 0; i < 5; ++i) {
    rows.push_back({1, phrases[i], "a", a[i]});
    rows.push_back({1, phrases[i], "b", b[i]});
    rows.push_back({1, phrases[i], "c", c[i]});
  }
  return rows;
}

TEST(JudgeWeights, AgreeingJudgesWeighMore) {
  const auto rows = judge_rows();
  const auto w = judge_agreement_weights(rows);
  EXPECT_GT(w.at("a"), w.at("c"));
  EXPECT_GT(w.at("b"), w.at("c"));
  EXPECT_GE(w.at("c"), 1e-3);
}

TEST(JudgeWeights, SingleJudge) {
  const std::vector<JudgeScore> rows{{1, "x", "solo", 4}, {1, "y", "solo", 2}};
  const JudgeTable table(rows);
  EXPECT_DOUBLE_EQ(table.score(1, "x"), 4.0);
  EXPECT_DOUBLE_EQ(table.score(1, "y"), 2.0);
}

TEST(JudgeWeights, PermutingJudgeIdsChangesNothing) {
  auto rows = judge_rows();
  const JudgeTable before(rows);
  for (auto& r : rows) r.judge = r.judge == "a" ? "c" : r.judge == "c" ? "a" : r.judge;
  const JudgeTable after(rows);
  EXPECT_DOUBLE_EQ(before.score(1, "p two"), after.score(1, "p two"));
}

TEST(JudgeTable, RejectsBadRows) {
  EXPECT_THROW(JudgeTable({{1, "x", "a", 6}}), EvalError);
  EXPECT_THROW(JudgeTable({{1, "x", "a", 3}, {1, "x", "a", 4}}), EvalError);
}

TEST(JudgeTable, LookupIsOrderFree) {
  const JudgeTable t({{1, "support vector machines", "a", 5}});
  EXPECT_TRUE(t.contains(1, "machines support vector"));
  EXPECT_FALSE(t.contains(2, "support vector machines"));
  EXPECT_THROW(t.score(1, "vector machines"), EvalError);
}

TEST(Nkqm, IdealRankingScoresOne) {
  const JudgeTable table(judge_rows());
  const std::vector<TopicRanking> ideal{{1, {"p one", "p two", "p three", "p four", "p five"}}};
  for (std::size_t k = 1; k <= 5; ++k) EXPECT_NEAR(nkqm_at_k(ideal, table, k), 1.0, 1e-9);
}

TEST(Nkqm, HandComputed) {
  const JudgeTable table({{1, "x", "j", 5}, {1, "y", "j", 3}, {1, "z", "j", 1}});
  const std::vector<TopicRanking> r{{1, {"z", "x"}}};
  const double dcg = 1.0 + 5.0 / std::log2(3.0);
  const double ideal = 5.0 + 3.0 / std::log2(3.0);
  EXPECT_NEAR(nkqm_at_k(r, table, 2), dcg / ideal, 1e-15);
}

TEST(Nkqm, AveragesTopics) {
  const JudgeTable table({{1, "x", "j", 5}, {1, "y", "j", 1}, {2, "u", "j", 2}, {2, "v", "j", 4}});
  const std::vector<TopicRanking> r{{1, {"x"}}, {2, {"u"}}};
  EXPECT_NEAR(nkqm_at_k(r, table, 1), (1.0 + 0.5) / 2, 1e-15);
}

TEST(Nkqm, Errors) {
  const JudgeTable table({{1, "x", "j", 5}, {1, "y", "j", 3}});
  const std::vector<TopicRanking> r{{1, {"x", "unjudged"}}};
  EXPECT_THROW(nkqm_at_k(r, table, 2), EvalError);
  EXPECT_THROW(nkqm_at_k(r, table, 0), EvalError);
  const std::vector<TopicRanking> ok{{1, {"x", "y"}}};
  EXPECT_THROW(nkqm_at_k(ok, table, 3), EvalError);
}

Corpus toy_corpus() {
  return corpus_from_lines(std::vector<std::string>{"a b", "c", "d"}, {});
}

TEST(Mi, ThreeTitleHandCount) {
  const Corpus c = toy_corpus();
  auto id = [&](const char* w) { return *c.vocabulary.find(w); };
  const std::vector<std::vector<Phrase>> rankings{{{id("a")}, {id("b")}}, {{id("c")}}};
  const CategoryLabels labels{{"X", "Y", "X"}};
  const JointCounts j = mi_joint_counts(rankings, c, labels, 2);
  ASSERT_EQ(j.categories, (std::vector<std::string>{"X", "Y"}));
  EXPECT_EQ(j.counts.values, (std::vector<double>{1.5, 0.0, 0.5, 1.0}));
  const double expected = 0.5 * std::log2(1.5) + (1.0 / 6) * std::log2(0.5) + (1.0 / 3) * std::log2(2.0);
  EXPECT_DOUBLE_EQ(mi_at_k(rankings, c, labels, 2), expected);
}

TEST(Mi, RankTiesGoToEarlierTopic) {
  const Corpus c = toy_corpus();
  const Phrase a{*c.vocabulary.find("a")};
  const std::vector<std::vector<Phrase>> rankings{{a}, {a}};
  const JointCounts j = mi_joint_counts(rankings, c, {{"X", "X", "Y"}}, 1);
  // Title 0 goes fully to topic 0; titles 1 and 2 are spread uniformly.
  EXPECT_EQ(j.counts.values, (std::vector<double>{1.5, 0.5, 0.5, 0.5}));
}

TEST(Mi, UniformJointIsZero) {
  Matrix m(3, 4);
  for (auto& v : m.values) v = 2.5;
  EXPECT_EQ(mutual_information(m), 0.0);
}

TEST(Mi, IdentityCouplingIsLogT) {
  std::vector<std::string> lines, cats;
  for (int t = 0; t < 4; ++t) {
    for (int i = 0; i < 5; ++i) {
      lines.push_back("topic" + std::to_string(t) + " filler");
      cats.push_back("cat" + std::to_string(t));
    }
  }
  const Corpus c = corpus_from_lines(lines, {});
  std::vector<std::vector<Phrase>> rankings;
  for (int t = 0; t < 4; ++t) rankings.push_back({{*c.vocabulary.find("topic" + std::to_string(t))}});
  EXPECT_NEAR(mi_at_k(rankings, c, {cats}, 1), 2.0, 1e-9);
}

TEST(Mi, Errors) {
  const Corpus c = toy_corpus();
  const std::vector<std::vector<Phrase>> r{{{0}}};
  EXPECT_THROW(mi_at_k(r, c, {{"X", "Y", "X"}}, 0), EvalError);
  EXPECT_THROW(mi_at_k(r, Corpus{}, {{}}, 1), EvalError);
  EXPECT_THROW(mi_at_k(r, c, {{"X"}}, 1), EvalError);
}

}  // namespace
}  // namespace kert
