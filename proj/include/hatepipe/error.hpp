#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hatepipe {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text. line() is 1-based; 0 when no position applies.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line)
      : Error(line == 0 ? message : message + " at line " + std::to_string(line)),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Well-formed input that violates a contract (schema mismatch, bad option).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// The data cannot support the requested model (single class, empty set).
class TrainingError : public Error {
 public:
  using Error::Error;
};

class EvaluationError : public Error {
 public:
  using Error::Error;
};

}  // namespace hatepipe
