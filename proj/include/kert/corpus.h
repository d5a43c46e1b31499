#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "kert/types.h"

namespace kert {

struct Title {
  std::size_t doc_id = 0;
  // Word ids in original order, stopwords removed. May be empty.
  std::vector<WordId> tokens;

  bool operator==(const Title&) const = default;
};

// Bidirectional word <-> id map. Ids are assigned densely in order of first
// occurrence, which makes interning stable across reloads of the same input.
class Vocabulary {
 public:
  WordId intern(std::string_view word);
  std::optional<WordId> find(std::string_view word) const;
  const std::string& word(WordId id) const { return words_.at(id); }
  std::size_t size() const { return words_.size(); }
  const std::vector<std::string>& words() const { return words_; }

  bool operator==(const Vocabulary& other) const { return words_ == other.words_; }

 private:
  struct StringHash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const { return std::hash<std::string_view>{}(s); }
  };
  std::vector<std::string> words_;
  std::unordered_map<std::string, WordId, StringHash, std::equal_to<>> ids_;
};

struct Corpus {
  std::vector<Title> titles;
  Vocabulary vocabulary;
  // Where the stopword list came from: file name plus content digest, or "none".
  std::string stopword_list_id = "none";

  std::size_t num_titles() const { return titles.size(); }
  std::size_t num_tokens() const;
  // Token occurrence count per word id.
  std::vector<std::size_t> word_frequencies() const;

  bool operator==(const Corpus&) const = default;
};

using StopwordSet = std::unordered_set<std::string>;

struct TokenizerOptions {
  bool lowercase = true;
  // Tokens shorter than this many code points are dropped.
  std::size_t min_token_length = 1;
};

// Splits on Unicode whitespace and punctuation (hyphens included, so "top-k"
// yields "top" and "k"), optionally lowercases, then drops stopwords and
// tokens below the minimum length. Lowercasing covers ASCII and Latin-1.
// Bytes that are not valid UTF-8 act as separators.
std::vector<std::string> tokenize(std::string_view line, const StopwordSet& stopwords,
                                  const TokenizerOptions& options = {});

bool is_valid_utf8(std::string_view text);

// One word per line; blank lines and surrounding whitespace ignored.
StopwordSet load_stopwords(const std::filesystem::path& path, bool lowercase = true);

Corpus corpus_from_lines(std::span<const std::string> lines, const StopwordSet& stopwords,
                         const TokenizerOptions& options = {},
                         std::string stopword_list_id = "none");

// Reads one title per line. An empty stopwords path means no stopword list.
// Invalid UTF-8 aborts the load with a ParseError carrying the line number.
Corpus load_corpus(const std::filesystem::path& path, const std::filesystem::path& stopwords,
                   const TokenizerOptions& options = {});

}  // namespace kert
