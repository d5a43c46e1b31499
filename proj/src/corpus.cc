#include "kert/corpus.h"

#include <fstream>
#include <sstream>

#include "kert/error.h"
#include "kert/hash.h"

namespace kert {
namespace {

constexpr char32_t kInvalid = 0xFFFFFFFF;

// Decodes one code point starting at text[i] and advances i. Malformed or
// overlong sequences yield kInvalid and advance by one byte.
char32_t next_code_point(std::string_view text, std::size_t& i) {
  const auto lead = static_cast<unsigned char>(text[i]);
  if (lead < 0x80) {
    ++i;
    return lead;
  }
  std::size_t len = 0;
  char32_t cp = 0;
  char32_t min = 0;
  if ((lead & 0xE0) == 0xC0) {
    len = 2, cp = lead & 0x1F, min = 0x80;
  } else if ((lead & 0xF0) == 0xE0) {
    len = 3, cp = lead & 0x0F, min = 0x800;
  } else if ((lead & 0xF8) == 0xF0) {
    len = 4, cp = lead & 0x07, min = 0x10000;
  } else {
    ++i;
    return kInvalid;
  }
  if (i + len > text.size()) {
    ++i;
    return kInvalid;
  }
  for (std::size_t k = 1; k < len; ++k) {
    const auto c = static_cast<unsigned char>(text[i + k]);
    if ((c & 0xC0) != 0x80) {
      ++i;
      return kInvalid;
    }
    cp = (cp << 6) | (c & 0x3F);
  }
  if (cp < min || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
    ++i;
    return kInvalid;
  }
  i += len;
  return cp;
}

void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

bool is_separator(char32_t cp) {
  if (cp == kInvalid) return true;
  if (cp < 0x80) {
    return !((cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z') || (cp >= '0' && cp <= '9'));
  }
  if (cp <= 0xA1) return true;  // C1 controls, NBSP, inverted exclamation
  switch (cp) {
    case 0xA7: case 0xAB: case 0xB6: case 0xB7: case 0xBB: case 0xBF:
    case 0xD7: case 0xF7: case 0x1680: case 0x2E3A: case 0xFEFF:
      return true;
    default:
      break;
  }
  if (cp >= 0x2000 && cp <= 0x206F) return true;  // general punctuation and spaces
  if (cp >= 0x2E00 && cp <= 0x2E7F) return true;  // supplemental punctuation
  if (cp >= 0x3000 && cp <= 0x303F) return true;  // CJK punctuation
  if ((cp >= 0xFF01 && cp <= 0xFF0F) || (cp >= 0xFF1A && cp <= 0xFF20) ||
      (cp >= 0xFF3B && cp <= 0xFF40) || (cp >= 0xFF5B && cp <= 0xFF65)) {
    return true;
  }
  return false;
}

char32_t to_lower(char32_t cp) {
  if (cp >= 'A' && cp <= 'Z') return cp + 0x20;
  if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 0x20;
  return cp;
}

std::string trim(std::string_view s) {
  const auto* ws = " \t\r\n\f\v";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return std::string(s.substr(b, e - b + 1));
}

std::string lowercase_copy(std::string_view word) {
  std::string out;
  out.reserve(word.size());
  for (std::size_t i = 0; i < word.size();) {
    const char32_t cp = next_code_point(word, i);
    if (cp == kInvalid) continue;
    append_utf8(out, to_lower(cp));
  }
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("error reading " + path.string());
  return ss.str();
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string::npos) end = text.size();
    std::string line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
    start = end + 1;
  }
  if (!lines.empty() && lines.front().starts_with("\xEF\xBB\xBF")) {
    lines.front().erase(0, 3);
  }
  return lines;
}

}  // namespace

WordId Vocabulary::intern(std::string_view word) {
  if (auto it = ids_.find(word); it != ids_.end()) return it->second;
  const auto id = static_cast<WordId>(words_.size());
  words_.emplace_back(word);
  ids_.emplace(words_.back(), id);
  return id;
}

std::optional<WordId> Vocabulary::find(std::string_view word) const {
  if (auto it = ids_.find(word); it != ids_.end()) return it->second;
  return std::nullopt;
}

std::size_t Corpus::num_tokens() const {
  std::size_t n = 0;
  for (const auto& title : titles) n += title.tokens.size();
  return n;
}

std::vector<std::size_t> Corpus::word_frequencies() const {
  std::vector<std::size_t> freq(vocabulary.size(), 0);
  for (const auto& title : titles) {
    for (WordId w : title.tokens) ++freq[w];
  }
  return freq;
}

bool is_valid_utf8(std::string_view text) {
  for (std::size_t i = 0; i < text.size();) {
    if (next_code_point(text, i) == kInvalid) return false;
  }
  return true;
}

std::vector<std::string> tokenize(std::string_view line, const StopwordSet& stopwords,
                                  const TokenizerOptions& options) {
  std::vector<std::string> tokens;
  std::string current;
  std::size_t current_len = 0;
  auto flush = [&] {
    if (current_len > 0 && current_len >= options.min_token_length &&
        !stopwords.contains(current)) {
      tokens.push_back(current);
    }
    current.clear();
    current_len = 0;
  };
  for (std::size_t i = 0; i < line.size();) {
    const char32_t cp = next_code_point(line, i);
    if (is_separator(cp)) {
      flush();
      continue;
    }
    append_utf8(current, options.lowercase ? to_lower(cp) : cp);
    ++current_len;
  }
  flush();
  return tokens;
}

StopwordSet load_stopwords(const std::filesystem::path& path, bool lowercase) {
  StopwordSet words;
  for (const auto& line : split_lines(read_file(path))) {
    auto word = trim(line);
    if (word.empty()) continue;
    words.insert(lowercase ? lowercase_copy(word) : word);
  }
  return words;
}

Corpus corpus_from_lines(std::span<const std::string> lines, const StopwordSet& stopwords,
                         const TokenizerOptions& options, std::string stopword_list_id) {
  Corpus corpus;
  corpus.stopword_list_id = std::move(stopword_list_id);
  corpus.titles.reserve(lines.size());
  for (std::size_t d = 0; d < lines.size(); ++d) {
    Title title{d, {}};
    for (const auto& token : tokenize(lines[d], stopwords, options)) {
      title.tokens.push_back(corpus.vocabulary.intern(token));
    }
    corpus.titles.push_back(std::move(title));
  }
  return corpus;
}

Corpus load_corpus(const std::filesystem::path& path, const std::filesystem::path& stopwords,
                   const TokenizerOptions& options) {
  const auto lines = split_lines(read_file(path));
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (!is_valid_utf8(lines[i])) {
      throw ParseError(path.string(), i + 1, "invalid UTF-8");
    }
  }
  StopwordSet words;
  std::string list_id = "none";
  if (!stopwords.empty()) {
    words = load_stopwords(stopwords, options.lowercase);
    list_id = stopwords.filename().string() + "@" + fnv1a_hex(read_file(stopwords));
  }
  return corpus_from_lines(lines, words, options, std::move(list_id));
}

}  // namespace kert
