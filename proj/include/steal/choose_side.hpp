#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "steal/engine.hpp"
#include "steal/outcome.hpp"

namespace steal {

// Reserved move identifiers for the seat choice.
inline constexpr int kChooseFirstMove = -1;
inline constexpr int kChooseSecondMove = -2;

// Wraps a game so that the opening move is a seat choice: playing -1
// continues as the inner game's first player, playing -2 continues with the
// seats swapped (inner outcomes negated from the wrapper's standpoint).
template <Game G>
class ChooseSideGame {
 public:
  struct Position {
    typename G::Position inner;
    std::int8_t choice;  // 0 = pending, 1 = as first, 2 = as second
  };

  explicit ChooseSideGame(G inner) : inner_(std::move(inner)) {}

  Position start(const typename G::Position& inner_start) const {
    return Position{inner_start, 0};
  }

  Seat mover(const Position& p) const {
    if (p.choice == 0) return Seat::first;
    Seat m = inner_.mover(p.inner);
    return p.choice == 1 ? m : other(m);
  }

  std::optional<Outcome> terminal(const Position& p) const {
    if (p.choice == 0) return std::nullopt;
    auto t = inner_.terminal(p.inner);
    if (!t) return std::nullopt;
    return p.choice == 1 ? *t : negate(*t);
  }

  std::vector<int> moves(const Position& p) const {
    if (p.choice == 0) return {kChooseSecondMove, kChooseFirstMove};
    return inner_.moves(p.inner);
  }

  Position apply(const Position& p, int move) const {
    if (p.choice == 0) {
      if (move == kChooseFirstMove) return Position{p.inner, 1};
      if (move == kChooseSecondMove) return Position{p.inner, 2};
      throw std::invalid_argument("choose-side: expected a seat choice move");
    }
    return Position{inner_.apply(p.inner, move), p.choice};
  }

  std::uint64_t key(const Position& p) const {
    return (inner_.key(p.inner) << 2) | static_cast<std::uint64_t>(p.choice);
  }

  const G& inner() const { return inner_; }

 private:
  G inner_;
};

template <Game G>
ChooseSideGame<G> choose_side_transform(G game) {
  return ChooseSideGame<G>(std::move(game));
}

}  // namespace steal
