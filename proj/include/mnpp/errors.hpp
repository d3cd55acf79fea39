#pragma once

#include <stdexcept>
#include <string>

namespace mnpp {

/// Malformed instance, config, or numeric input.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// External solver missing, failing, or producing unusable output.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A solution file line that could not be parsed.
class SolutionParseError : public SolverError {
 public:
  SolutionParseError(std::size_t line, const std::string& text)
      : SolverError("solution file line " + std::to_string(line) +
                    ": cannot parse '" + text + "'"),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Raised at a cooperative deadline check.
class TimeoutError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exhaustive search would exceed its configured ceiling.
class EnumerationTooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace mnpp
