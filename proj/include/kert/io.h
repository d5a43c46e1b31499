#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kert/corpus.h"
#include "kert/eval.h"
#include "kert/miner.h"
#include "kert/ranker.h"
#include "kert/topic_model.h"

namespace kert {

// First line of every artifact: "# <kind> key=value ...". Values are
// percent-encoded so they never contain spaces or '='.
struct ArtifactHeader {
  std::string kind;
  std::map<std::string, std::string> fields;

  const std::string& at(const std::string& key) const;
  std::string line() const;
  static ArtifactHeader parse(std::string_view line, const std::string& source);
};

// Shortest decimal text that parses back to the same double.
std::string format_double(double value);

// Labeled corpus: header, then one line per title of space-separated
// surface:label pairs. Reading rebuilds the corpus with identical word ids.
void write_labeled_corpus(std::ostream& out, const LabeledCorpus& labeled,
                          std::map<std::string, std::string> fields = {});
LabeledCorpus read_labeled_corpus(std::istream& in, const std::string& source,
                                  ArtifactHeader* header = nullptr);

// Dense matrix with a column-name row; row names go in the first column.
void write_matrix_tsv(std::ostream& out, const Matrix& m, std::span<const std::string> row_names,
                      std::span<const std::string> col_names, const ArtifactHeader& header);

// Candidate file: header, then "surface<TAB>support" per phrase.
void write_candidates(std::ostream& out, std::span<const CandidateKeyphrase> candidates,
                      const PhraseFormatter& formatter, const ArtifactHeader& header);
std::vector<CandidateKeyphrase> read_candidates(std::istream& in, const Vocabulary& vocabulary,
                                                const std::string& source,
                                                ArtifactHeader* header = nullptr);

// Ranked list: header, a column row, then
// rank, phrase, cov, pur, phr, com, score, support, filtered.
void write_ranked_tsv(std::ostream& out, std::span<const ScoredKeyphrase> ranked,
                      const ArtifactHeader& header);
// One JSON object per ranked phrase with the same fields plus topic and config.
void write_ranked_jsonl(std::ostream& out, std::span<const ScoredKeyphrase> ranked,
                        const ArtifactHeader& header);
// Topic id from the header and phrases in rank order.
TopicRanking read_ranked_tsv(std::istream& in, const std::string& source);

// topic, phrase, judge, score. An optional column row and '#' lines are skipped.
std::vector<JudgeScore> read_judge_scores(std::istream& in, const std::string& source);
// doc_id, category. Every title must be labeled exactly once.
CategoryLabels read_category_labels(std::istream& in, std::size_t num_titles,
                                    const std::string& source);

// word_id, surface, corpus frequency.
void write_vocabulary_tsv(std::ostream& out, const Corpus& corpus);

// Phrase surface string back to a word set; unknown words make it nullopt.
std::optional<Phrase> parse_phrase(std::string_view surface, const Vocabulary& vocabulary);

}  // namespace kert
