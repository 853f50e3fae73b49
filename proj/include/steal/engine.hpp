#pragma once

#include <algorithm>
#include <atomic>
#include <concepts>
#include <cstdint>
#include <exception>
#include <limits>
#include <map>
#include <optional>
#include <thread>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "steal/errors.hpp"
#include "steal/outcome.hpp"

namespace steal {

// An alternating-move game with a finite acyclic graph of positions.
// Positions are immutable values. Requirements:
//   - moves() is deterministic, ascending by move identifier, and empty
//     exactly when terminal() is engaged;
//   - key() is injective on the positions reachable from any solver input;
//   - every move strictly decreases a well-founded measure.
template <typename G>
concept Game =
    std::copyable<typename G::Position> &&
    requires(const G& g, const typename G::Position& p, int m) {
      { g.mover(p) } -> std::same_as<Seat>;
      { g.terminal(p) } -> std::same_as<std::optional<Outcome>>;
      { g.moves(p) } -> std::same_as<std::vector<int>>;
      { g.apply(p, m) } -> std::same_as<typename G::Position>;
      { g.key(p) } -> std::same_as<std::uint64_t>;
    };

struct SolveOptions {
  // Ceiling on stored states across the whole run; exceeding it raises
  // ResourceBoundError rather than returning an approximation.
  std::uint64_t max_states = std::uint64_t{1} << 27;
  unsigned threads = 1;
};

struct SolveReport {
  Outcome outcome = Outcome::draw;
  std::vector<int> optimal_moves;  // ascending; empty only for terminal roots
  std::uint64_t states_visited = 0;
  std::uint64_t table_size = 0;
};

// Depth argument meaning "audit the whole tree"; any depth this large is
// treated as unbounded.
inline constexpr int kFullDepth = std::numeric_limits<int>::max();

// Exhaustive memoized minimax over a Game. The value of a position never
// depends on memo warm-up or on the worker count; pruning stops a scan only
// once the mover's best possible outcome is found, so memoized values are
// always exact.
template <Game G>
class Solver {
 public:
  using Position = typename G::Position;

  explicit Solver(G game, SolveOptions opts = {})
      : game_(std::move(game)), opts_(opts) {
    if (opts_.threads == 0) opts_.threads = 1;
    main_.stored = &stored_;
    main_.limit = opts_.max_states;
  }

  // Backward-induction value of the position.
  Outcome solve(const Position& pos) {
    if (auto t = game_.terminal(pos)) return *t;
    if (opts_.threads == 1) {
      Outcome v = eval(main_, pos);
      visited_total_ = main_.visited;
      return v;
    }
    return root_values(pos).second;
  }

  // Value plus the full set of value-preserving moves. Every root child is
  // evaluated. Throws TerminalPositionError on terminal input.
  SolveReport optimal_moves(const Position& pos) {
    if (game_.terminal(pos))
      throw TerminalPositionError("optimal_moves: position is terminal");
    auto [children, best] = root_values(pos);
    SolveReport rep;
    rep.outcome = best;
    for (const auto& [move, value] : children)
      if (value == best) rep.optimal_moves.push_back(move);
    rep.states_visited = visited_total_;
    rep.table_size = stored_.load();
    return rep;
  }

  // Like optimal_moves but a terminal root yields its own outcome and an
  // empty move list instead of an error.
  SolveReport solve_report(const Position& pos) {
    if (auto t = game_.terminal(pos)) {
      SolveReport rep;
      rep.outcome = *t;
      return rep;
    }
    return optimal_moves(pos);
  }

  // Confirms the claimed value by a fresh recursion that never reads the
  // solver's table. Refutation is attempted only down to the given depth;
  // passing kFullDepth (or anything beyond the game length) makes the audit
  // exact. Returns false on mismatch.
  bool audit_strategy(const Position& pos, Outcome claimed,
                      int depth = kFullDepth) {
    AuditMemo memo;
    return audit(memo, pos, claimed, claimed, depth);
  }

  std::uint64_t states_visited() const { return visited_total_; }
  std::uint64_t table_size() const { return stored_.load(); }

 private:
  struct Worker {
    std::unordered_map<std::uint64_t, Outcome> table;
    std::atomic<std::uint64_t>* stored = nullptr;
    std::uint64_t limit = 0;
    std::uint64_t visited = 0;
  };

  Outcome eval(Worker& w, const Position& pos) {
    if (auto t = game_.terminal(pos)) {
      ++w.visited;
      return *t;
    }
    const std::uint64_t k = game_.key(pos);
    if (auto it = w.table.find(k); it != w.table.end()) return it->second;
    ++w.visited;
    const Seat m = game_.mover(pos);
    const Outcome top = best_for(m);
    Outcome best = worst_for(m);
    for (int move : game_.moves(pos)) {
      Outcome v = eval(w, game_.apply(pos, move));
      if (better_for(m, v, best)) best = v;
      if (best == top) break;  // exact: the mover can do no better
    }
    w.table.emplace(k, best);
    if (w.stored->fetch_add(1) + 1 > w.limit)
      throw ResourceBoundError("state ceiling exceeded (" +
                               std::to_string(w.limit) + " states)");
    return best;
  }

  // Evaluates every root child exactly. With threads > 1 the root moves are
  // split round-robin over workers with private tables; values are exact
  // either way, so the reduction is schedule-independent.
  std::pair<std::vector<std::pair<int, Outcome>>, Outcome> root_values(
      const Position& pos) {
    const std::vector<int> moves = game_.moves(pos);
    const Seat m = game_.mover(pos);
    std::vector<std::pair<int, Outcome>> children(moves.size());
    const unsigned workers =
        std::min<unsigned>(opts_.threads, std::max<size_t>(moves.size(), 1));
    if (workers <= 1) {
      for (size_t i = 0; i < moves.size(); ++i)
        children[i] = {moves[i], eval(main_, game_.apply(pos, moves[i]))};
      visited_total_ = main_.visited;
    } else {
      std::vector<Worker> pool(workers);
      std::vector<std::exception_ptr> errors(moves.size());
      std::vector<std::thread> threads;
      threads.reserve(workers);
      for (unsigned t = 0; t < workers; ++t) {
        pool[t].stored = &stored_;
        pool[t].limit = opts_.max_states;
        threads.emplace_back([&, t] {
          for (size_t i = t; i < moves.size(); i += workers) {
            try {
              children[i] = {moves[i], eval(pool[t], game_.apply(pos, moves[i]))};
            } catch (...) {
              errors[i] = std::current_exception();
            }
          }
        });
      }
      for (auto& th : threads) th.join();
      // Rethrow for the lowest failing move so errors are deterministic.
      for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
      visited_total_ = 0;
      for (const auto& w : pool) visited_total_ += w.visited;
    }
    Outcome best = worst_for(m);
    for (const auto& [move, value] : children)
      if (better_for(m, value, best)) best = value;
    return {std::move(children), best};
  }

  // Memo for full-depth audits, keyed by (position, claimed bounds). The
  // bounds index is lo+1, hi+1 over the three-valued outcome scale.
  struct AuditMemo {
    std::unordered_map<std::uint64_t, bool> full[3][3];
    std::uint64_t entries = 0;
  };

  // True iff "value(pos) lies in [lo, hi]" cannot be refuted within the
  // given depth. Bounds are in first-player preference order; minimax makes
  // the two endpoint checks independent: value >= lo needs one child at lo
  // or better for the maximizing seat but all children for the minimizing
  // seat, and dually for value <= hi.
  bool audit(AuditMemo& memo, const Position& pos, Outcome lo, Outcome hi,
             int depth) {
    if (auto t = game_.terminal(pos)) return lo <= *t && *t <= hi;
    if (depth <= 0) return true;
    const bool full = depth >= kFullDepth;
    std::unordered_map<std::uint64_t, bool>* cache = nullptr;
    std::uint64_t k = 0;
    if (full) {
      cache = &memo.full[static_cast<int>(lo) + 1][static_cast<int>(hi) + 1];
      k = game_.key(pos);
      if (auto it = cache->find(k); it != cache->end()) return it->second;
    }
    const Seat m = game_.mover(pos);
    const int next = full ? depth : depth - 1;
    const bool lo_trivial = lo == Outcome::second_win;
    const bool hi_trivial = hi == Outcome::first_win;
    bool lo_ok = lo_trivial;
    bool hi_ok = hi_trivial;
    if (m == Seat::first) {
      // value = max over children
      if (!lo_trivial) {
        for (int move : game_.moves(pos))
          if (audit(memo, game_.apply(pos, move), lo, Outcome::first_win,
                    next)) {
            lo_ok = true;
            break;
          }
      }
      if (!hi_trivial) {
        hi_ok = true;
        for (int move : game_.moves(pos))
          if (!audit(memo, game_.apply(pos, move), Outcome::second_win, hi,
                     next)) {
            hi_ok = false;
            break;
          }
      }
    } else {
      // value = min over children
      if (!lo_trivial) {
        lo_ok = true;
        for (int move : game_.moves(pos))
          if (!audit(memo, game_.apply(pos, move), lo, Outcome::first_win,
                     next)) {
            lo_ok = false;
            break;
          }
      }
      if (!hi_trivial) {
        for (int move : game_.moves(pos))
          if (audit(memo, game_.apply(pos, move), Outcome::second_win, hi,
                    next)) {
            hi_ok = true;
            break;
          }
      }
    }
    const bool ok = lo_ok && hi_ok;
    if (full) {
      cache->emplace(k, ok);
      if (++memo.entries > opts_.max_states)
        throw ResourceBoundError("audit state ceiling exceeded");
    }
    return ok;
  }

  G game_;
  SolveOptions opts_;
  Worker main_;
  std::atomic<std::uint64_t> stored_{0};
  std::uint64_t visited_total_ = 0;
};

}  // namespace steal
