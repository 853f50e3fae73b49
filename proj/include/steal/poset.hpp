#pragma once

#include <bit>
#include <cassert>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "steal/detail/text.hpp"
#include "steal/engine.hpp"
#include "steal/errors.hpp"
#include "steal/outcome.hpp"

namespace steal {

// Finite strict partial order on up to 64 elements. The relation is stored
// transitively closed, one below-mask per element.
class Poset {
 public:
  static constexpr int kMaxElements = 60;

  Poset() = default;

  Poset(int n, const std::vector<std::pair<int, int>>& relations,
        std::vector<std::string> labels = {})
      : n_(n), below_(static_cast<size_t>(std::max(n, 0)), 0),
        labels_(std::move(labels)) {
    if (n < 0 || n > kMaxElements)
      throw ParseError("poset size must be in [0, " +
                       std::to_string(kMaxElements) + "]");
    if (!labels_.empty() && static_cast<int>(labels_.size()) != n)
      throw std::invalid_argument("label count does not match element count");
    for (auto [x, y] : relations) {
      check_index(x);
      check_index(y);
      if (x == y) throw ParseError("cycle: element related to itself");
      below_[y] |= bit(x);
    }
    // Warshall closure over below-masks.
    for (int k = 0; k < n_; ++k)
      for (int y = 0; y < n_; ++y)
        if (below_[y] & bit(k)) below_[y] |= below_[k];
    for (int x = 0; x < n_; ++x)
      if (below_[x] & bit(x))
        throw ParseError("cycle: relation is not a strict partial order");
  }

  int size() const { return n_; }
  std::uint64_t all() const {
    return n_ == 0 ? 0 : ~std::uint64_t{0} >> (64 - n_);
  }

  bool less(int x, int y) const {
    check_index(x);
    check_index(y);
    return (below_[y] >> x) & 1;
  }

  // Mask of elements strictly below x.
  std::uint64_t strictly_below(int x) const {
    check_index(x);
    return below_[x];
  }

  // x together with everything below it.
  std::uint64_t downset(int x) const { return strictly_below(x) | bit(x); }

  std::string label(int i) const {
    check_index(i);
    if (static_cast<size_t>(i) < labels_.size() && !labels_[i].empty())
      return labels_[i];
    return std::to_string(i);
  }

  bool has_custom_label(int i) const {
    return static_cast<size_t>(i) < labels_.size() && !labels_[i].empty() &&
           labels_[i] != std::to_string(i);
  }

  friend bool operator==(const Poset& a, const Poset& b) {
    if (a.n_ != b.n_ || a.below_ != b.below_) return false;
    for (int i = 0; i < a.n_; ++i)
      if (a.label(i) != b.label(i)) return false;
    return true;
  }

 private:
  static std::uint64_t bit(int i) { return std::uint64_t{1} << i; }
  void check_index(int i) const {
    if (i < 0 || i >= n_)
      throw std::invalid_argument("element index out of range: " +
                                  std::to_string(i));
  }

  int n_ = 0;
  std::vector<std::uint64_t> below_;
  std::vector<std::string> labels_;
};

// A position in the poset game: the up-closed set of remaining elements.
struct PosetPosition {
  std::uint64_t remaining = 0;
  Seat mover = Seat::first;
};

inline bool is_up_closed(const Poset& p, std::uint64_t remaining) {
  for (int x = 0; x < p.size(); ++x)
    if ((remaining >> x) & 1)
      // everything above x must remain; equivalently no removed element
      // sits above a remaining one
      for (int y = 0; y < p.size(); ++y)
        if (p.less(x, y) && !((remaining >> y) & 1)) return false;
  return true;
}

// Poset game per normal play: a move removes an element and its downset;
// facing the empty poset loses.
class PosetGame {
 public:
  using Position = PosetPosition;

  explicit PosetGame(const Poset& p) : poset_(&p) {}

  Position initial() const { return {poset_->all(), Seat::first}; }

  Seat mover(const Position& p) const { return p.mover; }

  std::optional<Outcome> terminal(const Position& p) const {
    if (p.remaining) return std::nullopt;
    return p.mover == Seat::first ? Outcome::second_win : Outcome::first_win;
  }

  std::vector<int> moves(const Position& p) const {
    std::vector<int> out;
    for (std::uint64_t rest = p.remaining; rest;) {
      int x = std::countr_zero(rest);
      out.push_back(x);
      rest &= rest - 1;
    }
    return out;
  }

  Position apply(const Position& p, int x) const {
    if (!((p.remaining >> x) & 1))
      throw std::invalid_argument("move on an element already removed");
    Position q{p.remaining & ~poset_->downset(x), other(p.mover)};
    assert(is_up_closed(*poset_, q.remaining));
    return q;
  }

  std::uint64_t key(const Position& p) const {
    return (p.remaining << 1) | static_cast<std::uint64_t>(p.mover);
  }

  const Poset& poset() const { return *poset_; }

 private:
  const Poset* poset_;
};

inline SolveReport solve_poset(const Poset& p, SolveOptions opts = {}) {
  PosetGame g(p);
  Solver<PosetGame> solver(g, opts);
  return solver.solve_report(g.initial());
}

// Sprague-Grundy value: mex over the child values, zero exactly at
// positions lost by the mover.
inline int grundy(const Poset& p, const PosetPosition& pos,
                  SolveOptions opts = {}) {
  std::unordered_map<std::uint64_t, int> memo;
  auto rec = [&](auto&& self, std::uint64_t remaining) -> int {
    if (!remaining) return 0;
    if (auto it = memo.find(remaining); it != memo.end()) return it->second;
    std::uint64_t seen = 0;  // set of child values, as a bitmask
    for (std::uint64_t rest = remaining; rest;) {
      int x = std::countr_zero(rest);
      rest &= rest - 1;
      int gv = self(self, remaining & ~p.downset(x));
      if (gv < 64) seen |= std::uint64_t{1} << gv;
    }
    int mex = std::countr_one(seen);
    memo.emplace(remaining, mex);
    if (memo.size() > opts.max_states)
      throw ResourceBoundError("grundy state ceiling exceeded");
    return mex;
  };
  return rec(rec, pos.remaining);
}

inline int grundy(const Poset& p, SolveOptions opts = {}) {
  return grundy(p, PosetPosition{p.all(), Seat::first}, opts);
}

// A poset with a designated minimum element (below every other element).
struct MinimumPoset {
  Poset poset;
  int min_index = 0;
};

inline std::optional<int> find_minimum(const Poset& p) {
  for (int m = 0; m < p.size(); ++m) {
    bool ok = true;
    for (int x = 0; x < p.size() && ok; ++x)
      if (x != m && !p.less(m, x)) ok = false;
    if (ok) return m;
  }
  return std::nullopt;
}

inline MinimumPoset as_minimum_poset(Poset p) {
  auto m = find_minimum(p);
  if (!m)
    throw std::invalid_argument("poset has no minimum element");
  return MinimumPoset{std::move(p), *m};
}

// Appends a new element "m" below every existing element. The original
// indices and relation are preserved; m gets index n.
inline MinimumPoset add_minimum(const Poset& p) {
  const int n = p.size();
  std::vector<std::pair<int, int>> rel;
  std::vector<std::string> labels;
  for (int y = 0; y < n; ++y)
    for (int x = 0; x < n; ++x)
      if (p.less(x, y)) rel.emplace_back(x, y);
  for (int x = 0; x < n; ++x) rel.emplace_back(n, x);
  for (int i = 0; i < n; ++i) labels.push_back(p.label(i));
  labels.push_back("m");
  return MinimumPoset{Poset(n + 1, rel, std::move(labels)), n};
}

// All winning first moves of a minimum poset game. Such games are always a
// first-player win; anything else signals a solver defect.
inline SolveReport mp_move(const MinimumPoset& mp, SolveOptions opts = {}) {
  SolveReport rep = solve_poset(mp.poset, opts);
  if (rep.outcome != Outcome::first_win)
    throw std::logic_error(
        "minimum poset game did not solve to FIRST_WIN; solver defect");
  return rep;
}

struct MpHardReport {
  bool pass = false;
  Outcome p_outcome = Outcome::draw;  // value of the input poset game
  int m_index = 0;                    // index of m in the extended poset
  std::vector<int> mp_moves;          // winning first moves of the extension
};

// Checks the add-minimum biconditional on one input: m is a winning first
// move of the extension exactly when the input game is a second-player win,
// and in that case m is the only winning move.
inline MpHardReport verify_mphard_instance(const Poset& p,
                                           SolveOptions opts = {}) {
  MpHardReport rep;
  rep.p_outcome = solve_poset(p, opts).outcome;
  MinimumPoset mp = add_minimum(p);
  rep.m_index = mp.min_index;
  rep.mp_moves = mp_move(mp, opts).optimal_moves;
  const bool m_wins =
      std::find(rep.mp_moves.begin(), rep.mp_moves.end(), rep.m_index) !=
      rep.mp_moves.end();
  const bool second_wins_p = rep.p_outcome == Outcome::second_win;
  rep.pass = (m_wins == second_wins_p) &&
             (!second_wins_p || rep.mp_moves == std::vector<int>{rep.m_index});
  return rep;
}

// Chomp as a minimum poset game: grid cells under the componentwise order,
// poisoned top-right cell removed. Cell (i,j) has index i*cols+j and label
// r<i>c<j>; the minimum is (0,0).
inline MinimumPoset gen_chomp(int rows, int cols) {
  if (rows < 1 || cols < 1 || rows * cols < 2)
    throw std::invalid_argument("chomp needs at least two cells");
  if (rows * cols - 1 > Poset::kMaxElements)
    throw ResourceBoundError("chomp board too large");
  const int n = rows * cols - 1;  // poison (rows-1, cols-1) is excluded
  std::vector<std::pair<int, int>> rel;
  std::vector<std::string> labels(n);
  auto index = [cols](int i, int j) { return i * cols + j; };
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      if (i == rows - 1 && j == cols - 1) continue;
      labels[index(i, j)] = "r" + std::to_string(i) + "c" + std::to_string(j);
      // covers toward the cell above and to the right
      if (i + 1 < rows && !(i + 1 == rows - 1 && j == cols - 1))
        rel.emplace_back(index(i, j), index(i + 1, j));
      if (j + 1 < cols && !(i == rows - 1 && j + 1 == cols - 1))
        rel.emplace_back(index(i, j), index(i, j + 1));
    }
  MinimumPoset mp{Poset(n, rel, std::move(labels)), 0};
  assert(find_minimum(mp.poset) && *find_minimum(mp.poset) == 0);
  return mp;
}

// Nim as a poset game: disjoint chains, one per pile.
inline Poset gen_nim(const std::vector<int>& chains) {
  int total = 0;
  for (int len : chains) {
    if (len < 1) throw std::invalid_argument("chain lengths must be positive");
    total += len;
  }
  if (total > Poset::kMaxElements)
    throw ResourceBoundError("nim instance too large");
  std::vector<std::pair<int, int>> rel;
  int base = 0;
  for (int len : chains) {
    for (int k = 0; k + 1 < len; ++k) rel.emplace_back(base + k, base + k + 1);
    base += len;
  }
  return Poset(total, rel);
}

// --- .poset text format ----------------------------------------------------
//
//   poset <n>
//   label <i> <name>     (optional)
//   <i> < <j>            (any generating set; the reader closes it)
//
// '#' starts a comment. The writer emits covers only.

inline Poset parse_poset(const std::string& text) {
  auto lines = detail::significant_lines(text);
  if (lines.empty()) throw ParseError("empty poset file");
  auto head = detail::tokens(lines[0]);
  if (head.size() != 2 || head[0] != "poset")
    throw ParseError("expected header 'poset <n>'");
  const int n = static_cast<int>(detail::parse_int(head[1], "element count"));
  if (n < 0 || n > Poset::kMaxElements)
    throw ParseError("poset size must be in [0, " +
                     std::to_string(Poset::kMaxElements) + "]");
  std::vector<std::pair<int, int>> rel;
  std::vector<std::string> labels(static_cast<size_t>(n));
  for (size_t li = 1; li < lines.size(); ++li) {
    auto t = detail::tokens(lines[li]);
    if (t.size() == 3 && t[0] == "label") {
      int i = static_cast<int>(detail::parse_int(t[1], "label index"));
      if (i < 0 || i >= n) throw ParseError("label index out of range");
      labels[i] = t[2];
    } else if (t.size() == 3 && t[1] == "<") {
      int x = static_cast<int>(detail::parse_int(t[0], "relation"));
      int y = static_cast<int>(detail::parse_int(t[2], "relation"));
      if (x < 0 || x >= n || y < 0 || y >= n)
        throw ParseError("relation index out of range: " + lines[li]);
      rel.emplace_back(x, y);
    } else {
      throw ParseError("unrecognized poset line: " + lines[li]);
    }
  }
  bool any_label = false;
  for (const auto& l : labels) any_label |= !l.empty();
  return Poset(n, rel, any_label ? std::move(labels)
                                 : std::vector<std::string>{});
}

// Writes the transitive reduction (covers), which the reader re-closes.
inline std::string format_poset(const Poset& p) {
  std::ostringstream out;
  out << "poset " << p.size() << "\n";
  for (int i = 0; i < p.size(); ++i)
    if (p.has_custom_label(i)) out << "label " << i << " " << p.label(i) << "\n";
  for (int x = 0; x < p.size(); ++x)
    for (int y = 0; y < p.size(); ++y) {
      if (!p.less(x, y)) continue;
      bool cover = true;
      for (int z = 0; z < p.size() && cover; ++z)
        if (p.less(x, z) && p.less(z, y)) cover = false;
      if (cover) out << x << " < " << y << "\n";
    }
  return out.str();
}

}  // namespace steal
