#pragma once

#include <stdexcept>
#include <string>

namespace dtlab {

// Malformed input or parameters outside a function's domain.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The input is well formed but the requested computation trips a size or
// degree guard (exponential algorithms, exact matching, ...).
class Infeasible : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// TSPLIB / sidecar parse failure. Carries the 1-based line number when known.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// A recognized file whose variant we do not read (unknown EDGE_WEIGHT_TYPE...).
class UnsupportedFormat : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dtlab
