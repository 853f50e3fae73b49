#pragma once

#include <cstdint>
#include <string>

#include "steal/errors.hpp"

namespace steal {

enum class Seat : std::uint8_t { first = 0, second = 1 };

constexpr Seat other(Seat s) {
  return s == Seat::first ? Seat::second : Seat::first;
}

// Game value from the first player's standpoint. The numeric encoding makes
// the first player's preference the natural > order and seat swap a sign
// flip.
enum class Outcome : std::int8_t {
  second_win = -1,
  draw = 0,
  first_win = 1,
};

constexpr Outcome negate(Outcome o) {
  return static_cast<Outcome>(-static_cast<int>(o));
}

constexpr bool better_for(Seat s, Outcome a, Outcome b) {
  return s == Seat::first ? static_cast<int>(a) > static_cast<int>(b)
                          : static_cast<int>(a) < static_cast<int>(b);
}

constexpr Outcome best_for(Seat s) {
  return s == Seat::first ? Outcome::first_win : Outcome::second_win;
}

constexpr Outcome worst_for(Seat s) { return negate(best_for(s)); }

inline std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::first_win:
      return "FIRST_WIN";
    case Outcome::draw:
      return "DRAW";
    case Outcome::second_win:
      return "SECOND_WIN";
  }
  return "?";
}

inline Outcome outcome_from_string(const std::string& s) {
  if (s == "FIRST_WIN") return Outcome::first_win;
  if (s == "DRAW") return Outcome::draw;
  if (s == "SECOND_WIN") return Outcome::second_win;
  throw ParseError("unknown outcome: " + s);
}

}  // namespace steal
