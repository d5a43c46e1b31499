#include "kert/io.h"

#include <algorithm>
#include <charconv>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "kert/error.h"

namespace kert {
namespace {

std::string percent_encode(std::string_view s) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  std::string out;
  for (unsigned char c : s) {
    if (c <= ' ' || c == '%' || c == '=' || c == 0x7F) {
      out.push_back('%');
      out.push_back(kHex[c >> 4]);
      out.push_back(kHex[c & 0xF]);
    } else {
      out.push_back(static_cast<char>(c));
    }
  }
  return out;
}

std::string percent_decode(std::string_view s, const std::string& source) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '%') {
      out.push_back(s[i]);
      continue;
    }
    unsigned value = 0;
    if (i + 2 >= s.size()) throw ParseError(source, 1, "truncated escape");
    auto [ptr, ec] = std::from_chars(s.data() + i + 1, s.data() + i + 3, value, 16);
    if (ec != std::errc() || ptr != s.data() + i + 3) throw ParseError(source, 1, "bad escape");
    out.push_back(static_cast<char>(value));
    i += 2;
  }
  return out;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      parts.push_back(line.substr(start));
      return parts;
    }
    parts.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

bool read_line(std::istream& in, std::string& line) {
  if (!std::getline(in, line)) return false;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return true;
}

template <typename T>
T parse_number(std::string_view text, const std::string& source, std::size_t line,
               const char* what) {
  T value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ParseError(source, line, std::string("bad ") + what + " '" + std::string(text) + "'");
  }
  return value;
}

ArtifactHeader read_header(std::istream& in, const std::string& source) {
  std::string line;
  if (!read_line(in, line)) throw ParseError(source, 1, "missing header");
  return ArtifactHeader::parse(line, source);
}

}  // namespace

const std::string& ArtifactHeader::at(const std::string& key) const {
  auto it = fields.find(key);
  if (it == fields.end()) throw ParseError(kind, 1, "header lacks '" + key + "'");
  return it->second;
}

std::string ArtifactHeader::line() const {
  std::string out = "# " + kind;
  for (const auto& [k, v] : fields) out += " " + k + "=" + percent_encode(v);
  return out;
}

ArtifactHeader ArtifactHeader::parse(std::string_view line, const std::string& source) {
  if (!line.starts_with("# ")) throw ParseError(source, 1, "missing artifact header");
  ArtifactHeader h;
  std::istringstream in{std::string(line.substr(2))};
  if (!(in >> h.kind)) throw ParseError(source, 1, "empty artifact header");
  std::string field;
  while (in >> field) {
    const auto eq = field.find('=');
    if (eq == std::string::npos) throw ParseError(source, 1, "bad header field '" + field + "'");
    h.fields[field.substr(0, eq)] = percent_decode(std::string_view(field).substr(eq + 1), source);
  }
  return h;
}

std::string format_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

void write_labeled_corpus(std::ostream& out, const LabeledCorpus& labeled,
                          std::map<std::string, std::string> fields) {
  ArtifactHeader header{"kert-labeled-corpus", std::move(fields)};
  header.fields["topics"] = std::to_string(labeled.topics);
  header.fields["titles"] = std::to_string(labeled.corpus.titles.size());
  header.fields["stopwords"] = labeled.corpus.stopword_list_id;
  header.fields["burn_in"] = std::to_string(labeled.burn_in);
  header.fields["sweeps"] = std::to_string(labeled.total_sweeps);
  out << header.line() << '\n';
  const auto& vocab = labeled.corpus.vocabulary;
  for (std::size_t d = 0; d < labeled.corpus.titles.size(); ++d) {
    const auto& tokens = labeled.corpus.titles[d].tokens;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      const auto& word = vocab.word(tokens[i]);
      if (word.find_first_of(": \t\n") != std::string::npos) {
        throw Error("token '" + word + "' cannot be written to a labeled corpus");
      }
      if (i) out << ' ';
      out << word << ':' << labeled.labels[d][i];
    }
    out << '\n';
  }
}

LabeledCorpus read_labeled_corpus(std::istream& in, const std::string& source,
                                  ArtifactHeader* header_out) {
  ArtifactHeader header = read_header(in, source);
  if (header.kind != "kert-labeled-corpus") throw ParseError(source, 1, "not a labeled corpus");
  LabeledCorpus labeled;
  labeled.topics = parse_number<int>(header.at("topics"), source, 1, "topic count");
  labeled.burn_in = parse_number<int>(header.at("burn_in"), source, 1, "burn-in");
  labeled.total_sweeps = parse_number<int>(header.at("sweeps"), source, 1, "sweep count");
  labeled.corpus.stopword_list_id = header.at("stopwords");
  const auto expected = parse_number<std::size_t>(header.at("titles"), source, 1, "title count");

  std::string line;
  std::size_t line_no = 1;
  while (read_line(in, line)) {
    ++line_no;
    Title title{labeled.corpus.titles.size(), {}};
    std::vector<TopicId> labels;
    std::istringstream fields(line);
    std::string pair;
    while (fields >> pair) {
      const auto colon = pair.rfind(':');
      if (colon == std::string::npos || colon == 0) {
        throw ParseError(source, line_no, "expected token:label, got '" + pair + "'");
      }
      const auto label = parse_number<TopicId>(std::string_view(pair).substr(colon + 1), source,
                                               line_no, "topic label");
      if (label < 0 || label > labeled.topics) {
        throw ParseError(source, line_no, "topic label out of range");
      }
      title.tokens.push_back(labeled.corpus.vocabulary.intern(std::string_view(pair).substr(0, colon)));
      labels.push_back(label);
    }
    labeled.corpus.titles.push_back(std::move(title));
    labeled.labels.push_back(std::move(labels));
  }
  if (labeled.corpus.titles.size() != expected) {
    throw ParseError(source, 0, "expected " + std::to_string(expected) + " titles, found " +
                                    std::to_string(labeled.corpus.titles.size()));
  }
  if (header_out) *header_out = std::move(header);
  return labeled;
}

void write_matrix_tsv(std::ostream& out, const Matrix& m, std::span<const std::string> row_names,
                      std::span<const std::string> col_names, const ArtifactHeader& header) {
  out << header.line() << '\n';
  out << "id";
  for (const auto& c : col_names) out << '\t' << c;
  out << '\n';
  for (std::size_t r = 0; r < m.rows; ++r) {
    out << row_names[r];
    for (std::size_t c = 0; c < m.cols; ++c) out << '\t' << format_double(m.at(r, c));
    out << '\n';
  }
}

void write_candidates(std::ostream& out, std::span<const CandidateKeyphrase> candidates,
                      const PhraseFormatter& formatter, const ArtifactHeader& header) {
  out << header.line() << '\n';
  for (const auto& c : candidates) out << formatter.render(c.words) << '\t' << c.freq << '\n';
}

std::vector<CandidateKeyphrase> read_candidates(std::istream& in, const Vocabulary& vocabulary,
                                                const std::string& source,
                                                ArtifactHeader* header_out) {
  ArtifactHeader header = read_header(in, source);
  if (header.kind != "kert-candidates") throw ParseError(source, 1, "not a candidate file");
  const auto topic = parse_number<TopicId>(header.at("topic"), source, 1, "topic");
  std::vector<CandidateKeyphrase> out;
  std::string line;
  std::size_t line_no = 1;
  while (read_line(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto cols = split(line, '\t');
    if (cols.size() != 2) throw ParseError(source, line_no, "expected phrase<TAB>support");
    auto words = parse_phrase(cols[0], vocabulary);
    if (!words) throw ParseError(source, line_no, "phrase has words outside the vocabulary");
    out.push_back({std::move(*words),
                   parse_number<std::size_t>(cols[1], source, line_no, "support"), topic});
  }
  if (header_out) *header_out = std::move(header);
  return out;
}

void write_ranked_tsv(std::ostream& out, std::span<const ScoredKeyphrase> ranked,
                      const ArtifactHeader& header) {
  out << header.line() << '\n';
  out << "rank\tphrase\tcov\tpur\tphr\tcom\tscore\tsupport\tfiltered\n";
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    const auto& r = ranked[i];
    out << i + 1 << '\t' << r.surface << '\t' << format_double(r.cov) << '\t'
        << format_double(r.pur) << '\t' << format_double(r.phr) << '\t' << format_double(r.com)
        << '\t' << format_double(r.score) << '\t' << r.candidate.freq << '\t'
        << (r.filtered ? 1 : 0) << '\n';
  }
}

void write_ranked_jsonl(std::ostream& out, std::span<const ScoredKeyphrase> ranked,
                        const ArtifactHeader& header) {
  const auto& config = header.fields.count("config") ? header.fields.at("config") : std::string();
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    const auto& r = ranked[i];
    nlohmann::ordered_json j;
    j["topic"] = r.candidate.topic;
    j["rank"] = i + 1;
    j["phrase"] = r.surface;
    j["cov"] = r.cov;
    j["pur"] = r.pur;
    j["phr"] = r.phr;
    j["com"] = r.com;
    j["score"] = r.score;
    j["support"] = r.candidate.freq;
    j["filtered"] = r.filtered;
    j["config"] = config;
    out << j.dump() << '\n';
  }
}

TopicRanking read_ranked_tsv(std::istream& in, const std::string& source) {
  const ArtifactHeader header = read_header(in, source);
  if (header.kind != "kert-ranked") throw ParseError(source, 1, "not a ranked list");
  TopicRanking ranking;
  ranking.topic = parse_number<TopicId>(header.at("topic"), source, 1, "topic");
  std::string line;
  std::size_t line_no = 1;
  while (read_line(in, line)) {
    ++line_no;
    if (line.empty() || line.starts_with("rank\t")) continue;
    const auto cols = split(line, '\t');
    if (cols.size() < 2) throw ParseError(source, line_no, "expected rank<TAB>phrase...");
    ranking.phrases.emplace_back(cols[1]);
  }
  return ranking;
}

std::vector<JudgeScore> read_judge_scores(std::istream& in, const std::string& source) {
  std::vector<JudgeScore> rows;
  std::string line;
  std::size_t line_no = 0;
  while (read_line(in, line)) {
    ++line_no;
    if (line.empty() || line.starts_with('#')) continue;
    const auto cols = split(line, '\t');
    if (cols.size() != 4) throw ParseError(source, line_no, "expected topic, phrase, judge, score");
    if (rows.empty() && cols[0] == "topic") continue;
    rows.push_back({parse_number<TopicId>(cols[0], source, line_no, "topic"), std::string(cols[1]),
                    std::string(cols[2]), parse_number<int>(cols[3], source, line_no, "score")});
  }
  return rows;
}

CategoryLabels read_category_labels(std::istream& in, std::size_t num_titles,
                                    const std::string& source) {
  std::vector<std::optional<std::string>> labels(num_titles);
  std::string line;
  std::size_t line_no = 0;
  bool any = false;
  while (read_line(in, line)) {
    ++line_no;
    if (line.empty() || line.starts_with('#')) continue;
    const auto cols = split(line, '\t');
    if (cols.size() != 2) throw ParseError(source, line_no, "expected doc_id, category");
    if (!any && cols[0] == "doc_id") continue;
    any = true;
    const auto d = parse_number<std::size_t>(cols[0], source, line_no, "doc id");
    if (d >= num_titles) throw ParseError(source, line_no, "doc id beyond corpus");
    if (labels[d]) throw ParseError(source, line_no, "doc " + std::to_string(d) + " labeled twice");
    labels[d] = std::string(cols[1]);
  }
  CategoryLabels out;
  out.by_doc.reserve(num_titles);
  for (std::size_t d = 0; d < num_titles; ++d) {
    if (!labels[d]) throw ParseError(source, 0, "doc " + std::to_string(d) + " has no category");
    out.by_doc.push_back(std::move(*labels[d]));
  }
  return out;
}

void write_vocabulary_tsv(std::ostream& out, const Corpus& corpus) {
  const auto freq = corpus.word_frequencies();
  out << "word_id\tsurface\tfrequency\n";
  for (std::size_t w = 0; w < corpus.vocabulary.size(); ++w) {
    out << w << '\t' << corpus.vocabulary.word(static_cast<WordId>(w)) << '\t' << freq[w] << '\n';
  }
}

std::optional<Phrase> parse_phrase(std::string_view surface, const Vocabulary& vocabulary) {
  std::istringstream in{std::string(surface)};
  Phrase words;
  std::string word;
  while (in >> word) {
    auto id = vocabulary.find(word);
    if (!id) return std::nullopt;
    words.push_back(*id);
  }
  if (words.empty()) return std::nullopt;
  std::sort(words.begin(), words.end());
  words.erase(std::unique(words.begin(), words.end()), words.end());
  return words;
}

}  // namespace kert
