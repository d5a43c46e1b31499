#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "kert/config.h"
#include "kert/error.h"
#include "kert/io.h"
#include "kert/pipeline.h"
#include "oracle.h"

namespace kert {
namespace {

namespace fs = std::filesystem;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

fs::path fresh_dir(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / ("kert_pipeline_" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

// Two topical groups, each with a planted trigram, plus background noise.
fs::path write_planted_titles(const fs::path& dir) {
  std::mt19937_64 gen(3);
  std::vector<std::string> a, b;
  for (int i = 0; i < 15; ++i) {
    a.push_back("graph" + std::to_string(i));
    b.push_back("store" + std::to_string(i));
  }
  const std::vector<std::string> noise{"novel",  "approach", "efficient", "study",  "towards",
                                       "new",    "improved", "framework", "method", "analysis"};
  std::uniform_int_distribution<std::size_t> pick(0, 14), npick(0, noise.size() - 1);
  std::ofstream out(dir / "titles.txt");
  for (int i = 0; i < 120; ++i) {
    const bool first = i % 2 == 0;
    const auto& words = first ? a : b;
    std::string line = noise[npick(gen)] + " ";
    if (i % 3 == 0) line += first ? "frequent pattern mining " : "query processing engine ";
    for (int j = 0; j < 2; ++j) line += words[pick(gen)] + " ";
    out << line << "of the\n";
  }
  std::ofstream(dir / "stop.txt") << "of\nthe\n";
  return dir / "titles.txt";
}

RunConfig planted_config(const fs::path& dir) {
  RunConfig c;
  c.input = write_planted_titles(dir);
  c.stopwords = dir / "stop.txt";
  c.model.topics = 2;
  c.model.lambda = 0.8;
  c.model.burn_in = 50;
  c.model.total_sweeps = 120;
  c.min_support = 3;
  c.output_dir = dir / "run";
  c.write_matrices = true;
  return c;
}

TEST(Header, RoundTripWithEscapes) {
  const ArtifactHeader h{"kert-test", {{"path", "a b=c%d"}, {"n", "3"}}};
  const ArtifactHeader back = ArtifactHeader::parse(h.line(), "test");
  EXPECT_EQ(back.kind, "kert-test");
  EXPECT_EQ(back.fields, h.fields);
  EXPECT_THROW(ArtifactHeader::parse("no header", "test"), ParseError);
}

TEST(FormatDouble, RoundTrips) {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-17, 0.0, 123456789.125}) {
    EXPECT_EQ(std::stod(format_double(v)), v);
  }
}

TEST(LabeledCorpusIo, RoundTrip) {
  const LabeledCorpus lc = oracle::make_labeled(
      {{{"support", 1}, {"vector", 1}, {"for", 0}}, {}, {{"vector", 2}, {"caf\xC3\xA9", 2}}}, 2);
  std::stringstream s;
  write_labeled_corpus(s, lc, {{"config", "abc"}});
  ArtifactHeader h;
  const LabeledCorpus back = read_labeled_corpus(s, "mem", &h);
  EXPECT_EQ(h.at("config"), "abc");
  EXPECT_EQ(back.topics, 2);
  EXPECT_EQ(back.labels, lc.labels);
  EXPECT_EQ(back.corpus.titles, lc.corpus.titles);
  EXPECT_EQ(back.corpus.vocabulary, lc.corpus.vocabulary);
}

TEST(LabeledCorpusIo, RejectsLabelOutOfRange) {
  std::stringstream s("# kert-labeled-corpus topics=2 titles=1\nword:3\n");
  EXPECT_THROW(read_labeled_corpus(s, "mem"), ParseError);
}

TEST(CandidatesIo, RoundTrip) {
  const LabeledCorpus lc = oracle::make_labeled({{{"a", 1}, {"b", 1}}, {{"a", 1}}}, 1);
  const std::vector<CandidateKeyphrase> cands{{{0}, 2, 1}, {{1}, 1, 1}, {{0, 1}, 1, 1}};
  std::stringstream s;
  write_candidates(s, cands, PhraseFormatter(lc.corpus), {"kert-candidates", {{"topic", "1"}}});
  EXPECT_EQ(read_candidates(s, lc.corpus.vocabulary, "mem"), cands);
}

TEST(JudgeAndLabelReaders, SkipHeaders) {
  std::stringstream j("topic\tphrase\tjudge\tscore\n# note\n1\tsupport vector\tann\t4\n");
  const auto rows = read_judge_scores(j, "mem");
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].judge, "ann");
  EXPECT_EQ(rows[0].score, 4);
  std::stringstream l("doc_id\tcategory\n1\tcs.DB\n0\tcs.LG\n");
  EXPECT_EQ(read_category_labels(l, 2, "mem").by_doc, (std::vector<std::string>{"cs.LG", "cs.DB"}));
  std::stringstream missing("0\tcs.LG\n");
  EXPECT_THROW(read_category_labels(missing, 2, "mem"), ParseError);
}

TEST(Config, ParseAndOverride) {
  std::stringstream s(
      "# comment\n"
      "topics = 7\n"
      "min-support = 3   # trailing\n"
      "variant = no_pur\n"
      "\n"
      "lambda = 0.25\n");
  const RunConfig c = parse_run_config(s, "cfg");
  EXPECT_EQ(c.model.topics, 7);
  EXPECT_EQ(c.min_support, 3u);
  EXPECT_EQ(c.ranking.variant, Variant::kNoPur);
  EXPECT_DOUBLE_EQ(c.model.lambda, 0.25);
  EXPECT_EQ(c.model.beta, 0.07);
}

TEST(Config, ErrorsCarryLineNumbers) {
  std::stringstream s("topics = 2\nbogus_key = 1\n");
  try {
    parse_run_config(s, "cfg");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  RunConfig c;
  EXPECT_THROW(c.set("topics", "two"), ConfigError);
  EXPECT_THROW(c.set("lowercase", "maybe"), ConfigError);
}

TEST(Config, TextRoundTrip) {
  RunConfig c;
  c.model.topics = 3;
  c.ranking.omega = 0.125;
  c.input = "x.txt";
  std::stringstream s(c.to_text());
  EXPECT_EQ(parse_run_config(s, "cfg").to_text(), c.to_text());
}

TEST(Config, HashesTrackChanges) {
  const fs::path dir = fresh_dir("hash");
  std::ofstream(dir / "t.txt") << "a b\n";
  RunConfig c;
  c.input = dir / "t.txt";
  const std::string h0 = train_config_hash(c);
  EXPECT_EQ(h0, train_config_hash(c));
  RunConfig moved = c;
  fs::copy_file(dir / "t.txt", dir / "u.txt");
  moved.input = dir / "u.txt";
  EXPECT_EQ(train_config_hash(moved), h0) << "hash follows content, not path";
  c.model.seed = 2;
  EXPECT_NE(train_config_hash(c), h0);
  std::ofstream(dir / "u.txt") << "a c\n";
  EXPECT_NE(train_config_hash(moved), h0);
  EXPECT_NE(mine_config_hash(h0, 5, 5), mine_config_hash(h0, 4, 5));
  EXPECT_NE(rank_config_hash("m", {}, 0), rank_config_hash("m", {0.5, 0.4, Variant::kFull}, 0));
}

TEST(Pipeline, PlantedPhrasesOutrankNoise) {
  const fs::path dir = fresh_dir("planted");
  const RunConfig cfg = planted_config(dir);
  const PipelineResult r = run_pipeline(cfg);
  ASSERT_EQ(r.stages.size(), 3u);
  auto rank_of = [&](const std::string& needle) {
    for (TopicId t = 1; t <= 2; ++t) {
      std::ifstream in(RunLayout{r.dir}.ranked_tsv(t));
      const TopicRanking ranking = read_ranked_tsv(in, "ranked");
      for (std::size_t i = 0; i < ranking.phrases.size(); ++i) {
        if (normalize_phrase(ranking.phrases[i]) == normalize_phrase(needle)) return i;
      }
    }
    return std::size_t(-1);
  };
  EXPECT_LT(rank_of("frequent pattern mining"), 10u);
  EXPECT_LT(rank_of("query processing engine"), 10u);
  const std::size_t worst_planted =
      std::max(rank_of("frequent pattern mining"), rank_of("query processing engine"));
  for (const char* n : {"novel", "approach", "efficient", "study", "towards", "new", "improved",
                        "framework", "method", "analysis"}) {
    EXPECT_GT(rank_of(n), worst_planted) << n;
  }
  EXPECT_TRUE(fs::exists(RunLayout{r.dir}.phi()));
  EXPECT_TRUE(fs::exists(RunLayout{r.dir}.theta()));
  const auto manifest = nlohmann::json::parse(slurp(RunLayout{r.dir}.manifest()));
  EXPECT_EQ(manifest["config"], cfg.to_text());
  EXPECT_EQ(manifest["stages"].size(), 3u);
}

TEST(Pipeline, RerunIsBitIdentical) {
  const fs::path dir = fresh_dir("rerun");
  RunConfig cfg = planted_config(dir);
  run_pipeline(cfg);
  const std::string first = slurp(RunLayout{cfg.output_dir}.ranked_tsv(1)) +
                            slurp(RunLayout{cfg.output_dir}.ranked_tsv(2)) +
                            slurp(RunLayout{cfg.output_dir}.labeled());
  cfg.output_dir = dir / "run2";
  run_pipeline(cfg);
  const std::string second = slurp(RunLayout{cfg.output_dir}.ranked_tsv(1)) +
                             slurp(RunLayout{cfg.output_dir}.ranked_tsv(2)) +
                             slurp(RunLayout{cfg.output_dir}.labeled());
  EXPECT_EQ(first, second);
}

TEST(Pipeline, ResumeReusesAndRefusesStale) {
  const fs::path dir = fresh_dir("resume");
  RunConfig cfg = planted_config(dir);
  run_pipeline(cfg);
  const PipelineResult again = run_pipeline(cfg, true);
  for (const auto& s : again.stages) EXPECT_TRUE(s.reused) << s.stage;

  RunConfig changed = cfg;
  changed.model.seed = 99;
  try {
    run_pipeline(changed, true);
    FAIL() << "expected stale refusal";
  } catch (const StageError& e) {
    EXPECT_EQ(e.stage(), "train");
  }

  // A new labeled corpus under old candidates must not be ranked.
  train_stage(changed, cfg.output_dir);
  EXPECT_THROW(rank_stage(cfg.output_dir, cfg.ranking, 0), StaleArtifactError);

  // Changing only the ranking reruns rank alone.
  run_pipeline(cfg);
  RunConfig reranked = cfg;
  reranked.ranking.variant = Variant::kNoCom;
  EXPECT_THROW(run_pipeline(reranked, true), StageError);
  const PipelineResult fresh = run_pipeline(reranked, false);
  EXPECT_FALSE(fresh.stages.back().reused);
}

TEST(Pipeline, MissingInputNamesPath) {
  RunConfig cfg;
  cfg.input = "/nonexistent/titles.txt";
  cfg.output_dir = fresh_dir("missing") / "run";
  try {
    run_pipeline(cfg);
    FAIL();
  } catch (const StageError& e) {
    EXPECT_EQ(e.stage(), "train");
    EXPECT_NE(std::string(e.what()).find("/nonexistent/titles.txt"), std::string::npos);
  }
}

TEST(Pipeline, InvalidConfigFailsBeforeAnyStage) {
  RunConfig cfg;
  cfg.model.lambda = 2.0;
  cfg.output_dir = fresh_dir("invalid") / "run";
  EXPECT_THROW(run_pipeline(cfg), StageError);
  EXPECT_FALSE(fs::exists(cfg.output_dir));
}

}  // namespace
}  // namespace kert
