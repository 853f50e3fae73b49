#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "steal/circuit.hpp"
#include "steal/detail/bittable.hpp"
#include "steal/detail/text.hpp"
#include "steal/engine.hpp"
#include "steal/errors.hpp"
#include "steal/outcome.hpp"

namespace steal {

inline constexpr int kMaxUniverse = 62;
inline constexpr int kDefaultTabulationBound = 16;
inline constexpr int kDefaultDrawFreeBound = 22;

inline std::uint64_t full_mask(int n) {
  return n == 0 ? 0 : ~std::uint64_t{0} >> (64 - n);
}

inline std::uint64_t permute_mask(std::uint64_t mask,
                                  const std::vector<int>& perm) {
  std::uint64_t out = 0;
  for (std::uint64_t rest = mask; rest;) {
    int i = std::countr_zero(rest);
    rest &= rest - 1;
    out |= std::uint64_t{1} << perm[i];
  }
  return out;
}

// A family of winning sets in one of three representations. Containment
// ("does this claimed set include a winning set?") is what game play needs;
// for monotone predicates it coincides with the predicate itself, and for
// circuits it is a monotone-closure-table lookup.
class WinFamily {
 public:
  enum class Kind { explicit_sets, predicate, circuit };

  static WinFamily of_sets(int n, std::vector<std::uint64_t> sets) {
    check_universe(n);
    for (std::uint64_t s : sets) {
      if (s == 0)
        throw std::invalid_argument("explicit winning sets must be nonempty");
      if (s & ~full_mask(n))
        throw std::invalid_argument("winning set outside the universe");
    }
    std::sort(sets.begin(), sets.end());
    sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
    WinFamily f;
    f.kind_ = Kind::explicit_sets;
    f.n_ = n;
    f.sets_ = std::move(sets);
    return f;
  }

  // The predicate must be monotone; a seeded randomized audit spot-checks
  // that claim at construction time.
  static WinFamily of_predicate(int n,
                                std::function<bool(std::uint64_t)> pred,
                                std::uint64_t audit_seed = 0,
                                int audit_samples = 64) {
    check_universe(n);
    auto shared = std::make_shared<const std::function<bool(std::uint64_t)>>(
        std::move(pred));
    std::mt19937_64 rng(audit_seed);
    for (int i = 0; i < audit_samples; ++i) {
      std::uint64_t t = rng() & full_mask(n);
      std::uint64_t s = t & rng();
      if ((*shared)(s) && !(*shared)(t))
        throw std::invalid_argument(
            "predicate declared monotone fails a monotonicity audit");
    }
    WinFamily f;
    f.kind_ = Kind::predicate;
    f.n_ = n;
    f.pred_ = std::move(shared);
    return f;
  }

  static WinFamily of_circuit(int n, Circuit c,
                              int tabulation_bound = kDefaultTabulationBound) {
    check_universe(n);
    if (c.input_count() != n)
      throw std::invalid_argument("circuit input count != universe size");
    WinFamily f;
    f.kind_ = Kind::circuit;
    f.n_ = n;
    f.circuit_ = std::make_shared<const Circuit>(std::move(c));
    f.closure_ = std::make_shared<const detail::BitTable>(
        monotone_closure_table(*f.circuit_, tabulation_bound));
    return f;
  }

  Kind kind() const { return kind_; }
  int universe_size() const { return n_; }
  const std::vector<std::uint64_t>& sets() const { return sets_; }
  const Circuit& circuit() const { return *circuit_; }

  // Does the claimed set contain some winning set?
  bool contains_winning_set(std::uint64_t claimed) const {
    switch (kind_) {
      case Kind::explicit_sets:
        for (std::uint64_t s : sets_)
          if ((s & claimed) == s) return true;
        return false;
      case Kind::predicate:
        return (*pred_)(claimed);
      case Kind::circuit:
        return closure_->get(claimed);
    }
    return false;
  }

  // Raw family membership (no closure); this is what symmetry compares.
  bool raw_accepts(std::uint64_t s) const {
    switch (kind_) {
      case Kind::explicit_sets:
        return std::binary_search(sets_.begin(), sets_.end(), s);
      case Kind::predicate:
        return (*pred_)(s);
      case Kind::circuit:
        return circuit_->eval(s);
    }
    return false;
  }

  // Structural identity; used as a fast path when checking an identity
  // witness over two handles to the same family.
  bool same_representation(const WinFamily& o) const {
    if (kind_ != o.kind_ || n_ != o.n_) return false;
    switch (kind_) {
      case Kind::explicit_sets:
        return sets_ == o.sets_;
      case Kind::predicate:
        return pred_ == o.pred_;
      case Kind::circuit:
        return circuit_ == o.circuit_ || *closure_ == *o.closure_;
    }
    return false;
  }

 private:
  static void check_universe(int n) {
    if (n < 0 || n > kMaxUniverse)
      throw std::invalid_argument("universe size must be in [0, " +
                                  std::to_string(kMaxUniverse) + "]");
  }

  Kind kind_ = Kind::explicit_sets;
  int n_ = 0;
  std::vector<std::uint64_t> sets_;
  std::shared_ptr<const std::function<bool(std::uint64_t)>> pred_;
  std::shared_ptr<const Circuit> circuit_;
  std::shared_ptr<const detail::BitTable> closure_;
};

// Universe permutation pi witnessing that W2 is the image of W1 (the set
// bijection phi is induced by pi).
struct SymmetryWitness {
  std::vector<int> perm;
};

inline void check_permutation(const std::vector<int>& perm, int n) {
  if (static_cast<int>(perm.size()) != n)
    throw std::invalid_argument("witness permutation has wrong length");
  std::vector<bool> seen(static_cast<size_t>(n), false);
  for (int v : perm) {
    if (v < 0 || v >= n || seen[v])
      throw std::invalid_argument("witness is not a permutation");
    seen[v] = true;
  }
}

struct MakerMakerInstance {
  MakerMakerInstance(int n, WinFamily first_family, WinFamily second_family,
                     std::optional<SymmetryWitness> w = std::nullopt,
                     std::vector<std::string> element_labels = {})
      : universe_size(n),
        w1(std::move(first_family)),
        w2(std::move(second_family)),
        witness(std::move(w)),
        labels(std::move(element_labels)) {
    if (n < 0 || n > kMaxUniverse)
      throw std::invalid_argument("universe size out of range");
    if (w1.universe_size() != n || w2.universe_size() != n)
      throw std::invalid_argument("family universe mismatch");
    if (!labels.empty() && static_cast<int>(labels.size()) != n)
      throw std::invalid_argument("label count does not match universe");
  }

  std::string element_name(int i) const {
    if (static_cast<size_t>(i) < labels.size() && !labels[i].empty())
      return labels[i];
    return std::to_string(i);
  }

  int universe_size;
  WinFamily w1, w2;
  std::optional<SymmetryWitness> witness;
  std::vector<std::string> labels;
};

// Checks the attached witness: the image of W1 under pi must equal W2 as a
// set family. Mixed or non-explicit representations are compared by raw
// acceptance over all assignments, which needs the universe within the
// tabulation bound.
inline bool verify_symmetry(const MakerMakerInstance& inst,
                            int tabulation_bound = kDefaultTabulationBound) {
  if (!inst.witness)
    throw std::invalid_argument(
        "symmetry witness missing (searching for one is out of scope)");
  const int n = inst.universe_size;
  const std::vector<int>& perm = inst.witness->perm;
  check_permutation(perm, n);
  bool identity = true;
  for (int i = 0; i < n; ++i) identity &= perm[i] == i;
  if (identity && inst.w1.same_representation(inst.w2)) return true;
  if (inst.w1.kind() == WinFamily::Kind::explicit_sets &&
      inst.w2.kind() == WinFamily::Kind::explicit_sets) {
    std::vector<std::uint64_t> image;
    image.reserve(inst.w1.sets().size());
    for (std::uint64_t s : inst.w1.sets()) image.push_back(permute_mask(s, perm));
    std::sort(image.begin(), image.end());
    return image == inst.w2.sets();
  }
  if (n > tabulation_bound)
    throw ResourceBoundError("symmetry check bounded at " +
                             std::to_string(tabulation_bound) + " elements");
  for (std::uint64_t a = 0; a <= full_mask(n); ++a) {
    if (inst.w1.raw_accepts(a) != inst.w2.raw_accepts(permute_mask(a, perm)))
      return false;
    if (a == full_mask(n)) break;
  }
  return true;
}

// Alternating claims starting with the first player. Only the mover's
// family can newly complete after the mover's claim, so testing both
// players' sets at every node is equivalent to the "as soon as" rule; the
// first player's family is tested first, which also settles the pinned
// semantics when a family accepts the empty set.
class SmmGame {
 public:
  struct Position {
    std::uint64_t claimed_first = 0;
    std::uint64_t claimed_second = 0;
    Seat mover = Seat::first;
  };

  explicit SmmGame(const MakerMakerInstance& inst) : inst_(&inst) {
    if (inst.universe_size > 31)
      throw ResourceBoundError("solving supports universes up to 31 elements");
  }

  Position initial() const { return {}; }

  Seat mover(const Position& p) const { return p.mover; }

  std::optional<Outcome> terminal(const Position& p) const {
    if (inst_->w1.contains_winning_set(p.claimed_first))
      return Outcome::first_win;
    if (inst_->w2.contains_winning_set(p.claimed_second))
      return Outcome::second_win;
    if ((p.claimed_first | p.claimed_second) ==
        full_mask(inst_->universe_size))
      return Outcome::draw;
    return std::nullopt;
  }

  std::vector<int> moves(const Position& p) const {
    std::vector<int> out;
    std::uint64_t rest = full_mask(inst_->universe_size) &
                         ~(p.claimed_first | p.claimed_second);
    while (rest) {
      out.push_back(std::countr_zero(rest));
      rest &= rest - 1;
    }
    return out;
  }

  Position apply(const Position& p, int element) const {
    std::uint64_t b = std::uint64_t{1} << element;
    if ((p.claimed_first | p.claimed_second) & b)
      throw std::invalid_argument("element already claimed");
    Position q = p;
    if (p.mover == Seat::first)
      q.claimed_first |= b;
    else
      q.claimed_second |= b;
    q.mover = other(p.mover);
    return q;
  }

  std::uint64_t key(const Position& p) const {
    const int n = inst_->universe_size;
    return p.claimed_first | (p.claimed_second << n) |
           (static_cast<std::uint64_t>(p.mover) << (2 * n));
  }

 private:
  const MakerMakerInstance* inst_;
};

inline Outcome solve_smm(const MakerMakerInstance& inst,
                         SolveOptions opts = {}) {
  SmmGame g(inst);
  Solver<SmmGame> solver(g, opts);
  return solver.solve(g.initial());
}

// All optimal first moves under Win > Draw > Loss. A game already won by
// the first player at the start (a family accepting the empty set) reports
// every element as optimal.
inline SolveReport smm_move(const MakerMakerInstance& inst,
                            SolveOptions opts = {}) {
  SmmGame g(inst);
  auto start = g.initial();
  if (auto t = g.terminal(start)) {
    if (*t == Outcome::first_win) {
      SolveReport rep;
      rep.outcome = *t;
      rep.optimal_moves = g.moves(start);
      return rep;
    }
    throw TerminalPositionError("smm_move: game over before the first move");
  }
  Solver<SmmGame> solver(g, opts);
  return solver.optimal_moves(start);
}

struct DrawFreeReport {
  bool draw_free = false;
  std::optional<std::uint64_t> counterexample;  // lowest failing subset
};

// The draw-freeness lemma, checked over every subset S of the universe:
// S contains a W1 set or its complement contains a W2 set.
inline DrawFreeReport draw_free_check(const MakerMakerInstance& inst,
                                      int bound = kDefaultDrawFreeBound) {
  if (inst.universe_size > bound)
    throw ResourceBoundError("draw-freeness check bounded at " +
                             std::to_string(bound) + " elements");
  const std::uint64_t full = full_mask(inst.universe_size);
  for (std::uint64_t s = 0;; ++s) {
    if (!inst.w1.contains_winning_set(s) &&
        !inst.w2.contains_winning_set(full & ~s))
      return {false, s};
    if (s == full) break;
  }
  return {true, std::nullopt};
}

// --- generators ---------------------------------------------------------

inline SymmetryWitness identity_witness(int n) {
  SymmetryWitness w;
  w.perm.resize(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) w.perm[i] = i;
  return w;
}

inline int clique_edge_index(int i, int j, int n) {
  if (i > j) std::swap(i, j);
  return i * n - i * (i + 1) / 2 + (j - i - 1);
}

// Universe: edges of K_n in lexicographic (i,j) order. Winning sets: the
// edge sets of all k-vertex cliques.
inline MakerMakerInstance gen_clique(int n, int k) {
  if (k < 2 || n < k) throw std::invalid_argument("clique game needs n >= k >= 2");
  const int edges = n * (n - 1) / 2;
  if (edges > kMaxUniverse) throw ResourceBoundError("clique game too large");
  std::vector<std::uint64_t> sets;
  std::vector<int> pick;
  auto rec = [&](auto&& self, int from) -> void {
    if (static_cast<int>(pick.size()) == k) {
      std::uint64_t mask = 0;
      for (size_t a = 0; a < pick.size(); ++a)
        for (size_t b = a + 1; b < pick.size(); ++b)
          mask |= std::uint64_t{1} << clique_edge_index(pick[a], pick[b], n);
      sets.push_back(mask);
      return;
    }
    for (int v = from; v < n; ++v) {
      pick.push_back(v);
      self(self, v + 1);
      pick.pop_back();
    }
  };
  rec(rec, 0);
  WinFamily f = WinFamily::of_sets(edges, std::move(sets));
  return MakerMakerInstance(edges, f, f, identity_witness(edges));
}

// Universe: integers 1..n as indices 0..n-1. Winning sets: k-term
// arithmetic progressions.
inline MakerMakerInstance gen_ap(int n, int k) {
  if (k < 2 || n < k) throw std::invalid_argument("AP game needs n >= k >= 2");
  if (n > kMaxUniverse) throw ResourceBoundError("AP game too large");
  std::vector<std::uint64_t> sets;
  for (int d = 1; d * (k - 1) <= n - 1; ++d)
    for (int s = 1; s + d * (k - 1) <= n; ++s) {
      std::uint64_t mask = 0;
      for (int t = 0; t < k; ++t)
        mask |= std::uint64_t{1} << (s + t * d - 1);
      sets.push_back(mask);
    }
  WinFamily f = WinFamily::of_sets(n, std::move(sets));
  return MakerMakerInstance(n, f, f, identity_witness(n));
}

// Universe: points of {1..k}^d, point (a_0..a_{d-1}) at index sum a_j k^j
// (0-based coordinates). Winning sets: maximal combinatorial lines, each
// direction counted once (first varying coordinate increases).
inline MakerMakerInstance gen_hypercube_ttt(int k, int d) {
  if (k < 2 || d < 1)
    throw std::invalid_argument("hypercube game needs k >= 2, d >= 1");
  std::uint64_t points = 1;
  for (int j = 0; j < d; ++j) {
    points *= static_cast<std::uint64_t>(k);
    if (points > kMaxUniverse) throw ResourceBoundError("hypercube game too large");
  }
  const int n = static_cast<int>(points);
  std::vector<std::uint64_t> sets;
  std::vector<int> dir(static_cast<size_t>(d), -1);   // -1, 0, +1 per axis
  std::vector<int> base(static_cast<size_t>(d), 0);   // constants where dir=0
  auto emit = [&]() {
    std::uint64_t mask = 0;
    for (int t = 0; t < k; ++t) {
      std::uint64_t idx = 0, scale = 1;
      for (int j = 0; j < d; ++j) {
        int coord = dir[j] == 0 ? base[j] : (dir[j] > 0 ? t : k - 1 - t);
        idx += static_cast<std::uint64_t>(coord) * scale;
        scale *= static_cast<std::uint64_t>(k);
      }
      mask |= std::uint64_t{1} << idx;
    }
    sets.push_back(mask);
  };
  auto walk = [&](auto&& self, int j, bool seen_nonzero) -> void {
    if (j == d) {
      if (seen_nonzero) emit();
      return;
    }
    for (int v : {-1, 0, 1}) {
      if (!seen_nonzero && v == -1) continue;  // canonical: first nonzero is +1
      dir[j] = v;
      if (v == 0) {
        for (int c = 0; c < k; ++c) {
          base[j] = c;
          self(self, j + 1, seen_nonzero);
        }
      } else {
        self(self, j + 1, true);
      }
    }
  };
  walk(walk, 0, false);
  WinFamily f = WinFamily::of_sets(n, std::move(sets));
  return MakerMakerInstance(n, f, f, identity_witness(n));
}

// Classic 3x3 board: cell (row, col) at index 3*row + col; the 8 lines.
inline MakerMakerInstance gen_tictactoe() { return gen_hypercube_ttt(3, 2); }

// --- .smm text format (explicit and circuit flavors) ---------------------
//
//   universe <n>
//   perm: p0 p1 ... p(n-1)     (optional witness)
//   w1: i j k                  (one explicit set per line)
//   w2: i j k
//
//   smmcirc
//   c1: <path to .circ>
//   c2: <path to .circ>
//   relabel: p0 p1 ... p(n-1)  (optional witness)
//
// '#' starts a comment. Referenced files are resolved by the loader
// callback (the CLI resolves them relative to the .smm file).

using FileLoader = std::function<std::string(const std::string&)>;

inline FileLoader no_file_loader() {
  return [](const std::string& path) -> std::string {
    throw ParseError("instance references file '" + path +
                     "' but no loader was provided");
  };
}

inline std::vector<int> parse_perm_tokens(const std::vector<std::string>& t,
                                          size_t from) {
  std::vector<int> perm;
  for (size_t i = from; i < t.size(); ++i)
    perm.push_back(static_cast<int>(detail::parse_int(t[i], "permutation")));
  return perm;
}

inline MakerMakerInstance parse_smm(
    const std::string& text, const FileLoader& load = no_file_loader(),
    int tabulation_bound = kDefaultTabulationBound) {
  auto lines = detail::significant_lines(text);
  if (lines.empty()) throw ParseError("empty instance file");
  auto head = detail::tokens(lines[0]);

  if (head.size() == 2 && head[0] == "universe") {
    const int n = static_cast<int>(detail::parse_int(head[1], "universe"));
    if (n < 0 || n > kMaxUniverse) throw ParseError("universe size out of range");
    std::vector<std::uint64_t> sets1, sets2;
    std::optional<SymmetryWitness> witness;
    for (size_t li = 1; li < lines.size(); ++li) {
      auto t = detail::tokens(lines[li]);
      if (t.empty()) continue;
      if (t[0] == "perm:") {
        witness = SymmetryWitness{parse_perm_tokens(t, 1)};
        check_permutation(witness->perm, n);
      } else if (t[0] == "w1:" || t[0] == "w2:") {
        std::uint64_t mask = 0;
        for (size_t i = 1; i < t.size(); ++i) {
          int e = static_cast<int>(detail::parse_int(t[i], "element"));
          if (e < 0 || e >= n) throw ParseError("element out of range: " + t[i]);
          mask |= std::uint64_t{1} << e;
        }
        if (mask == 0) throw ParseError("winning set line lists no elements");
        (t[0] == "w1:" ? sets1 : sets2).push_back(mask);
      } else {
        throw ParseError("unrecognized instance line: " + lines[li]);
      }
    }
    return MakerMakerInstance(n, WinFamily::of_sets(n, std::move(sets1)),
                              WinFamily::of_sets(n, std::move(sets2)),
                              std::move(witness));
  }

  if (head.size() == 1 && head[0] == "smmcirc") {
    std::optional<Circuit> c1, c2;
    std::optional<SymmetryWitness> witness;
    for (size_t li = 1; li < lines.size(); ++li) {
      auto t = detail::tokens(lines[li]);
      if (t.size() == 2 && t[0] == "c1:")
        c1 = parse_circuit(load(t[1]));
      else if (t.size() == 2 && t[0] == "c2:")
        c2 = parse_circuit(load(t[1]));
      else if (t.size() >= 1 && t[0] == "relabel:")
        witness = SymmetryWitness{parse_perm_tokens(t, 1)};
      else
        throw ParseError("unrecognized instance line: " + lines[li]);
    }
    if (!c1 || !c2) throw ParseError("smmcirc needs both c1: and c2: lines");
    const int n = c1->input_count();
    if (c2->input_count() != n)
      throw ParseError("circuit input counts differ");
    if (witness) check_permutation(witness->perm, n);
    return MakerMakerInstance(
        n, WinFamily::of_circuit(n, std::move(*c1), tabulation_bound),
        WinFamily::of_circuit(n, std::move(*c2), tabulation_bound),
        std::move(witness));
  }

  throw ParseError("expected 'universe <n>', 'smmcirc' or 'smmhexred' header");
}

inline std::string format_smm(const MakerMakerInstance& inst) {
  if (inst.w1.kind() != WinFamily::Kind::explicit_sets ||
      inst.w2.kind() != WinFamily::Kind::explicit_sets)
    throw std::invalid_argument("only explicit instances have a text form");
  std::ostringstream out;
  out << "universe " << inst.universe_size << "\n";
  if (inst.witness) {
    out << "perm:";
    for (int v : inst.witness->perm) out << " " << v;
    out << "\n";
  }
  for (const char* tag : {"w1:", "w2:"}) {
    const auto& sets = tag[1] == '1' ? inst.w1.sets() : inst.w2.sets();
    for (std::uint64_t s : sets) {
      out << tag;
      for (std::uint64_t rest = s; rest;) {
        out << " " << std::countr_zero(rest);
        rest &= rest - 1;
      }
      out << "\n";
    }
  }
  return out.str();
}

inline bool operator==(const MakerMakerInstance& a,
                       const MakerMakerInstance& b) {
  if (a.universe_size != b.universe_size) return false;
  if (!a.w1.same_representation(b.w1) || !a.w2.same_representation(b.w2))
    return false;
  if (a.witness.has_value() != b.witness.has_value()) return false;
  if (a.witness && a.witness->perm != b.witness->perm) return false;
  return true;
}

}  // namespace steal
