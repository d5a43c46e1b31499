#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace kert {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Malformed input. line is 1-based, 0 when not applicable.
class ParseError : public Error {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& what)
      : Error(source + (line ? ":" + std::to_string(line) : std::string()) + ": " + what),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

// Sampler bookkeeping went out of sync with the assignments. Always a bug.
class InconsistentCountsError : public Error {
 public:
  using Error::Error;
};

class UndefinedTopicError : public Error {
 public:
  using Error::Error;
};

class EvalError : public Error {
 public:
  using Error::Error;
};

class StaleArtifactError : public Error {
 public:
  using Error::Error;
};

}  // namespace kert
