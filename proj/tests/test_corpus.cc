#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "kert/corpus.h"
#include "kert/error.h"

namespace kert {
namespace {

namespace fs = std::filesystem;

fs::path write_temp(const std::string& name, const std::string& content) {
  const fs::path p = fs::temp_directory_path() / ("kert_corpus_" + name);
  std::ofstream(p, std::ios::binary) << content;
  return p;
}

std::vector<std::string> words_of(const Corpus& c, std::size_t d) {
  std::vector<std::string> out;
  for (WordId w : c.titles[d].tokens) out.push_back(c.vocabulary.word(w));
  return out;
}

TEST(Tokenize, SplitsHyphensAndLowercases) {
  EXPECT_EQ(tokenize("Mining Top-K Frequent Closed Patterns", {}),
            (std::vector<std::string>{"mining", "top", "k", "frequent", "closed", "patterns"}));
}

TEST(Tokenize, EmptyLine) { EXPECT_TRUE(tokenize("", {}).empty()); }

TEST(Tokenize, AllStopwords) { EXPECT_TRUE(tokenize("of of of", {"of"}).empty()); }

TEST(Tokenize, StripsPunctuation) {
  EXPECT_EQ(tokenize("  \"Graphs,\" (trees); and: rules!\t", {"and"}),
            (std::vector<std::string>{"graphs", "trees", "rules"}));
}

TEST(Tokenize, KeepsCaseWhenAsked) {
  EXPECT_EQ(tokenize("SVM Kernels", {}, {false, 1}), (std::vector<std::string>{"SVM", "Kernels"}));
}

TEST(Tokenize, MinimumLengthCountsCodePoints) {
  EXPECT_EQ(tokenize("a bc \xC3\xA9t\xC3\xA9 x", {}, {true, 2}),
            (std::vector<std::string>{"bc", "\xC3\xA9t\xC3\xA9"}));
}

TEST(Tokenize, LowercasesLatin1) {
  EXPECT_EQ(tokenize("\xC3\x89TUDE", {}), (std::vector<std::string>{"\xC3\xA9tude"}));
}

TEST(Tokenize, UnicodePunctuationSeparates) {
  // em dash and ideographic comma
  EXPECT_EQ(tokenize("graph\xE2\x80\x94mining\xE3\x80\x81rules", {}),
            (std::vector<std::string>{"graph", "mining", "rules"}));
}

TEST(Utf8, Validation) {
  EXPECT_TRUE(is_valid_utf8("plain \xC3\xA9"));
  EXPECT_FALSE(is_valid_utf8("bad \xC3"));
  EXPECT_FALSE(is_valid_utf8("\xED\xA0\x80"));  // surrogate
  EXPECT_FALSE(is_valid_utf8("\xC0\xAF"));      // overlong
}

TEST(Corpus, StopwordsRemovedAndEmptyTitleKept) {
  const std::vector<std::string> lines{"support vector machines for text", "the the the"};
  const Corpus c = corpus_from_lines(lines, {"the", "for"});
  ASSERT_EQ(c.num_titles(), 2u);
  EXPECT_EQ(words_of(c, 0), (std::vector<std::string>{"support", "vector", "machines", "text"}));
  EXPECT_TRUE(c.titles[1].tokens.empty());
  EXPECT_EQ(c.vocabulary.size(), 4u);
}

TEST(Corpus, VocabularyIdsFollowFirstOccurrence) {
  const std::vector<std::string> lines{"b a", "c a b"};
  const Corpus c = corpus_from_lines(lines, {});
  EXPECT_EQ(c.vocabulary.words(), (std::vector<std::string>{"b", "a", "c"}));
  EXPECT_EQ(c.word_frequencies(), (std::vector<std::size_t>{2, 2, 1}));
  EXPECT_EQ(c.num_tokens(), 5u);
}

TEST(LoadCorpus, EmptyFile) {
  const Corpus c = load_corpus(write_temp("empty.txt", ""), {});
  EXPECT_EQ(c.num_titles(), 0u);
  EXPECT_EQ(c.vocabulary.size(), 0u);
}

TEST(LoadCorpus, ReadsFileWithStopwordList) {
  const auto titles = write_temp("titles.txt", "\xEF\xBB\xBFSupport Vector Machines for Text\r\nThe the THE\n");
  const auto stop = write_temp("stop.txt", "The\n\n  for  \n");
  const Corpus c = load_corpus(titles, stop);
  ASSERT_EQ(c.num_titles(), 2u);
  EXPECT_EQ(words_of(c, 0), (std::vector<std::string>{"support", "vector", "machines", "text"}));
  EXPECT_TRUE(c.titles[1].tokens.empty());
  EXPECT_NE(c.stopword_list_id, "none");
  EXPECT_NE(c.stopword_list_id.find("stop.txt"), std::string::npos);
}

TEST(LoadCorpus, InvalidUtf8ReportsLine) {
  const auto p = write_temp("bad.txt", "fine title\nbroken \xFF title\n");
  try {
    load_corpus(p, {});
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(LoadCorpus, MissingFileIsIoError) {
  EXPECT_THROW(load_corpus("/nonexistent/titles.txt", {}), IoError);
}

}  // namespace
}  // namespace kert
