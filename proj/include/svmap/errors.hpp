#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace svmap {

// Thrown by the text parsers (expressions, set literals, map files).
// line/col are 1-based; col points at the offending character.
struct ParseError : std::runtime_error {
  int line;
  int col;
  ParseError(std::string msg, int line_, int col_)
      : std::runtime_error(std::move(msg)), line(line_), col(col_) {}
};

// A breakpoint at which a classification rule failed, plus the rule.
struct Witness {
  double x;
  std::string reason;
};

// Thrown when an operation's precondition does not hold (e.g. phi on a map
// that is not minimal usco).  Carries the classification witnesses so callers
// can report which breakpoints broke which rule.
struct PreconditionError : std::runtime_error {
  std::vector<Witness> witnesses;
  explicit PreconditionError(std::string msg, std::vector<Witness> w = {})
      : std::runtime_error(std::move(msg)), witnesses(std::move(w)) {}
};

// Thrown when an internal cross-check fails or a result contract cannot be
// met (e.g. a sup enclosure that cannot reach the requested tolerance).
struct InvariantError : std::runtime_error {
  explicit InvariantError(std::string msg) : std::runtime_error(std::move(msg)) {}
};

}  // namespace svmap
