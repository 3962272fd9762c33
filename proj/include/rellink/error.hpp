#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rellink {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed knowledge-base or ontology input. line() is 1-based, 0 when the
// error is not tied to a single line (e.g. a hierarchy cycle).
class LoadError : public Error {
 public:
  LoadError(const std::string& what, std::size_t line = 0)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

// Generator output that does not follow the [Arg | Rel] grammar.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::string chunk)
      : Error(what + ": '" + chunk + "'"), chunk_(std::move(chunk)) {}
  const std::string& chunk() const noexcept { return chunk_; }

 private:
  std::string chunk_;
};

class SerializationError : public Error {
 public:
  using Error::Error;
};

// The question alone (or the question plus the relation-free entity
// structures) does not fit the encoder token budget.
class InputTooLongError : public Error {
 public:
  using Error::Error;
};

class GeneratorError : public Error {
 public:
  using Error::Error;
};

class EvalError : public Error {
 public:
  using Error::Error;
};

}  // namespace rellink
