#pragma once

#include <stdexcept>
#include <string>

namespace steal {

// Input text could not be parsed or fails structural validation.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// A configured exhaustive bound (state ceiling, tabulation bound, board
// bound) was exceeded. Never carries a partial answer.
class ResourceBoundError : public std::runtime_error {
 public:
  explicit ResourceBoundError(const std::string& what)
      : std::runtime_error(what) {}
};

// An operation requiring a non-terminal position was given a terminal one.
class TerminalPositionError : public std::runtime_error {
 public:
  explicit TerminalPositionError(const std::string& what)
      : std::runtime_error(what) {}
};

}  // namespace steal
