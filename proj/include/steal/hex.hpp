#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "steal/detail/text.hpp"
#include "steal/engine.hpp"
#include "steal/errors.hpp"
#include "steal/outcome.hpp"

namespace steal {

enum class HexCell : std::uint8_t { empty, red, blue };

// An n x n rhombus Hex board. Red connects the top row to the bottom row,
// Blue the left column to the right column. Cells are indexed row-major;
// adjacency is the six-neighbor topology (r,c) ~ (r±1,c), (r,c±1),
// (r-1,c+1), (r+1,c-1), clipped to the board.
class HexPosition {
 public:
  static constexpr int kMaxSide = 7;  // 49 cells, masks stay in one word

  explicit HexPosition(int n) : n_(n) {
    if (n < 1 || n > kMaxSide)
      throw ParseError("hex side must be in [1, " +
                       std::to_string(kMaxSide) + "]");
    adj_.assign(static_cast<size_t>(n * n), 0);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) {
        static constexpr int dr[] = {-1, 1, 0, 0, -1, 1};
        static constexpr int dc[] = {0, 0, -1, 1, 1, -1};
        for (int d = 0; d < 6; ++d) {
          int rr = r + dr[d], cc = c + dc[d];
          if (rr >= 0 && rr < n && cc >= 0 && cc < n)
            adj_[index(r, c)] |= bit(index(rr, cc));
        }
      }
  }

  int side() const { return n_; }
  int cell_count() const { return n_ * n_; }
  int index(int r, int c) const { return r * n_ + c; }

  HexCell at(int r, int c) const { return at(checked_index(r, c)); }
  HexCell at(int i) const {
    if ((red_ >> i) & 1) return HexCell::red;
    if ((blue_ >> i) & 1) return HexCell::blue;
    return HexCell::empty;
  }

  void set(int r, int c, HexCell v) {
    int i = checked_index(r, c);
    red_ &= ~bit(i);
    blue_ &= ~bit(i);
    if (v == HexCell::red) red_ |= bit(i);
    if (v == HexCell::blue) blue_ |= bit(i);
  }

  std::uint64_t red_mask() const { return red_; }
  std::uint64_t blue_mask() const { return blue_; }
  std::uint64_t all_mask() const {
    return ~std::uint64_t{0} >> (64 - cell_count());
  }
  std::uint64_t empty_mask() const { return all_mask() & ~red_ & ~blue_; }

  std::uint64_t adjacency(int i) const { return adj_[i]; }
  std::uint64_t top_mask() const { return all_mask() & (bit(n_) - 1); }
  std::uint64_t bottom_mask() const { return top_mask() << (n_ * (n_ - 1)); }
  std::uint64_t left_mask() const {
    std::uint64_t m = 0;
    for (int r = 0; r < n_; ++r) m |= bit(index(r, 0));
    return m;
  }
  std::uint64_t right_mask() const { return left_mask() << (n_ - 1); }

  // True iff `stones` connects the two source/target border masks.
  bool connects(std::uint64_t stones, std::uint64_t from,
                std::uint64_t to) const {
    std::uint64_t visited = stones & from;
    std::uint64_t frontier = visited;
    while (frontier) {
      if (visited & to) return true;
      std::uint64_t next = 0;
      while (frontier) {
        int i = std::countr_zero(frontier);
        frontier &= frontier - 1;
        next |= adj_[i];
      }
      frontier = next & stones & ~visited;
      visited |= frontier;
    }
    return (visited & to) != 0;
  }

  friend bool operator==(const HexPosition& a, const HexPosition& b) {
    return a.n_ == b.n_ && a.red_ == b.red_ && a.blue_ == b.blue_;
  }

 private:
  static std::uint64_t bit(int i) { return std::uint64_t{1} << i; }
  int checked_index(int r, int c) const {
    if (r < 0 || r >= n_ || c < 0 || c >= n_)
      throw std::invalid_argument("hex cell out of range");
    return index(r, c);
  }

  int n_;
  std::uint64_t red_ = 0;
  std::uint64_t blue_ = 0;
  std::vector<std::uint64_t> adj_;
};

inline void check_extra(const HexPosition& q, std::uint64_t extra) {
  if (extra & ~q.all_mask())
    throw std::invalid_argument("extra cells outside the board");
  if (extra & (q.red_mask() | q.blue_mask()))
    throw std::invalid_argument("extra cells overlap filled cells");
}

// True iff the pre-placed Red stones together with `extra` connect the top
// row to the bottom row. Monotone in extra; pure.
inline bool red_complete(const HexPosition& q, std::uint64_t extra) {
  check_extra(q, extra);
  return q.connects(q.red_mask() | extra, q.top_mask(), q.bottom_mask());
}

// Blue duals: left column to right column.
inline bool blue_complete(const HexPosition& q, std::uint64_t extra) {
  check_extra(q, extra);
  return q.connects(q.blue_mask() | extra, q.left_mask(), q.right_mask());
}

// Hex as an alternating coloring game. Red moves first and owns the
// first-player seat; the game ends as soon as either side is connected.
class HexGame {
 public:
  struct Position {
    std::uint64_t red = 0;
    std::uint64_t blue = 0;
    Seat mover = Seat::first;
  };

  explicit HexGame(const HexPosition& board) : board_(&board) {
    if (board.side() > 5)
      throw ResourceBoundError("hex solving supports sides up to 5");
  }

  Position initial() const {
    return {board_->red_mask(), board_->blue_mask(), Seat::first};
  }

  Seat mover(const Position& p) const { return p.mover; }

  std::optional<Outcome> terminal(const Position& p) const {
    if (board_->connects(p.red, board_->top_mask(), board_->bottom_mask()))
      return Outcome::first_win;
    if (board_->connects(p.blue, board_->left_mask(), board_->right_mask()))
      return Outcome::second_win;
    if ((p.red | p.blue) == board_->all_mask())
      // impossible on a full board: exactly one side is connected
      throw std::logic_error("full hex board with no connection");
    return std::nullopt;
  }

  std::vector<int> moves(const Position& p) const {
    std::vector<int> out;
    for (std::uint64_t rest = board_->all_mask() & ~(p.red | p.blue); rest;) {
      out.push_back(std::countr_zero(rest));
      rest &= rest - 1;
    }
    return out;
  }

  Position apply(const Position& p, int cell) const {
    std::uint64_t b = std::uint64_t{1} << cell;
    if ((p.red | p.blue) & b)
      throw std::invalid_argument("cell already colored");
    Position q = p;
    if (p.mover == Seat::first)
      q.red |= b;
    else
      q.blue |= b;
    q.mover = other(p.mover);
    return q;
  }

  std::uint64_t key(const Position& p) const {
    const int cells = board_->cell_count();
    return p.red | (p.blue << cells) |
           (static_cast<std::uint64_t>(p.mover) << (2 * cells));
  }

 private:
  const HexPosition* board_;
};

// Does Red, moving first, have a winning strategy from this position?
inline bool decision_hex(const HexPosition& q, SolveOptions opts = {}) {
  HexGame g(q);
  Solver<HexGame> solver(g, opts);
  return solver.solve(g.initial()) == Outcome::first_win;
}

// Exhaustively confirms that every full 2-coloring connects exactly one
// player's sides.
inline bool hex_no_draw_check(int n, int exhaustive_bound = 3) {
  if (n < 1) throw std::invalid_argument("board side must be positive");
  if (n > exhaustive_bound)
    throw ResourceBoundError("hex no-draw check bounded at side " +
                             std::to_string(exhaustive_bound));
  HexPosition q(n);
  const std::uint64_t all = q.all_mask();
  for (std::uint64_t reds = 0;; ++reds) {
    bool red = red_complete(q, reds);
    bool blue = blue_complete(q, all & ~reds);
    if (red == blue) return false;
    if (reds == all) break;
  }
  return true;
}

// --- .hex text format --------------------------------------------------
//
//   hex <n>
//   <n rows of n characters from {R, B, .}>
//
// Row 0 is the top (Red's first border), column 0 the left (Blue's first).

inline HexPosition parse_hex(const std::string& text) {
  auto lines = detail::significant_lines(text);
  if (lines.empty()) throw ParseError("empty hex file");
  auto head = detail::tokens(lines[0]);
  if (head.size() != 2 || head[0] != "hex")
    throw ParseError("expected header 'hex <n>'");
  const int n = static_cast<int>(detail::parse_int(head[1], "board side"));
  if (n < 1 || n > HexPosition::kMaxSide)
    throw ParseError("hex side must be in [1, " +
                     std::to_string(HexPosition::kMaxSide) + "]");
  if (lines.size() != static_cast<size_t>(n) + 1)
    throw ParseError("expected " + std::to_string(n) + " board rows");
  HexPosition q(n);
  for (int r = 0; r < n; ++r) {
    const std::string& row = lines[r + 1];
    if (static_cast<int>(row.size()) != n)
      throw ParseError("row " + std::to_string(r) + " must have " +
                       std::to_string(n) + " cells");
    for (int c = 0; c < n; ++c) {
      switch (row[c]) {
        case 'R': q.set(r, c, HexCell::red); break;
        case 'B': q.set(r, c, HexCell::blue); break;
        case '.': q.set(r, c, HexCell::empty); break;
        default:
          throw ParseError(std::string("invalid cell character '") +
                           row[c] + "'");
      }
    }
  }
  return q;
}

inline std::string format_hex(const HexPosition& q) {
  std::ostringstream out;
  out << "hex " << q.side() << "\n";
  for (int r = 0; r < q.side(); ++r) {
    for (int c = 0; c < q.side(); ++c) {
      switch (q.at(r, c)) {
        case HexCell::red: out << 'R'; break;
        case HexCell::blue: out << 'B'; break;
        case HexCell::empty: out << '.'; break;
      }
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace steal
