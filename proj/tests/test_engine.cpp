#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "steal/choose_side.hpp"
#include "steal/engine.hpp"
#include "steal/hex.hpp"
#include "steal/makermaker.hpp"
#include "steal/poset.hpp"
#include "support/corpora.hpp"
#include "support/oracles.hpp"

using namespace steal;

TEST_CASE("outcome preference order and negation") {
  CHECK(better_for(Seat::first, Outcome::first_win, Outcome::draw));
  CHECK(better_for(Seat::first, Outcome::draw, Outcome::second_win));
  CHECK(better_for(Seat::second, Outcome::second_win, Outcome::draw));
  CHECK(better_for(Seat::second, Outcome::draw, Outcome::first_win));
  for (Outcome o : {Outcome::first_win, Outcome::draw, Outcome::second_win}) {
    CHECK(negate(negate(o)) == o);
    CHECK(outcome_from_string(to_string(o)) == o);
  }
  CHECK(negate(Outcome::first_win) == Outcome::second_win);
  CHECK(negate(Outcome::draw) == Outcome::draw);
}

TEST_CASE("solve on the smallest games") {
  SECTION("empty poset: the mover has no move and loses") {
    Poset empty;
    CHECK(solve_poset(empty).outcome == Outcome::second_win);
  }
  SECTION("1x1 hex: the single cell completes Red's path") {
    HexPosition q(1);
    CHECK(decision_hex(q));
  }
  SECTION("chomp 2x3 is a first player win") {
    CHECK(solve_poset(gen_chomp(2, 3).poset).outcome == Outcome::first_win);
  }
}

TEST_CASE("optimal moves") {
  SECTION("one-square chomp: the unique move empties the poset") {
    MinimumPoset chomp = gen_chomp(1, 2);
    SolveReport rep = solve_poset(chomp.poset);
    CHECK(rep.outcome == Outcome::first_win);
    CHECK(rep.optimal_moves == std::vector<int>{0});
  }
  SECTION("tic-tac-toe: draw, and the report matches plain backward induction") {
    MakerMakerInstance ttt = gen_tictactoe();
    SmmGame g(ttt);
    Solver<SmmGame> solver(g);
    SolveReport rep = solver.optimal_moves(g.initial());
    CHECK(rep.outcome == Outcome::draw);
    CHECK(rep.optimal_moves == oracle::naive_optimal_moves(g, g.initial()));
    CHECK(std::is_sorted(rep.optimal_moves.begin(), rep.optimal_moves.end()));
  }
  SECTION("every reported move preserves the parent value") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
      Poset p = corpora::random_poset(5, rng);
      PosetGame g(p);
      Solver<PosetGame> solver(g);
      SolveReport rep = solver.optimal_moves(g.initial());
      REQUIRE(!rep.optimal_moves.empty());
      for (int mv : rep.optimal_moves)
        CHECK(solver.solve(g.apply(g.initial(), mv)) == rep.outcome);
    }
  }
  SECTION("terminal input is an error") {
    Poset empty;
    PosetGame g(empty);
    Solver<PosetGame> solver(g);
    CHECK_THROWS_AS(solver.optimal_moves(g.initial()), TerminalPositionError);
  }
}

TEST_CASE("engine agrees with the naive oracle on random posets") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    Poset p = corpora::random_poset(2 + static_cast<int>(rng() % 6), rng);
    PosetGame g(p);
    Solver<PosetGame> solver(g);
    auto start = g.initial();
    CHECK(solver.solve(start) == oracle::naive_value(g, start));
    if (!g.terminal(start))
      CHECK(solver.optimal_moves(start).optimal_moves ==
            oracle::naive_optimal_moves(g, start));
  }
}

TEST_CASE("audit_strategy") {
  SECTION("confirms the solved value and rejects others") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 15; ++trial) {
      Poset p = corpora::random_poset(5, rng);
      PosetGame g(p);
      Solver<PosetGame> solver(g);
      Outcome v = solver.solve(g.initial());
      CHECK(solver.audit_strategy(g.initial(), v));
      // poset games never draw, so the negated claim is always wrong
      CHECK_FALSE(solver.audit_strategy(g.initial(), negate(v)));
    }
  }
  SECTION("1x1 hex is not a second player win") {
    HexPosition q(1);
    HexGame g(q);
    Solver<HexGame> solver(g);
    CHECK(solver.audit_strategy(g.initial(), Outcome::first_win));
    CHECK_FALSE(solver.audit_strategy(g.initial(), Outcome::second_win));
  }
  SECTION("chomp 3x3 first player win audits clean") {
    MinimumPoset chomp = gen_chomp(3, 3);
    PosetGame g(chomp.poset);
    Solver<PosetGame> solver(g);
    CHECK(solver.audit_strategy(g.initial(), Outcome::first_win));
    CHECK_FALSE(solver.audit_strategy(g.initial(), Outcome::second_win));
  }
  SECTION("depth zero cannot refute a non-terminal claim") {
    Poset p(2, {{0, 1}});
    PosetGame g(p);
    Solver<PosetGame> solver(g);
    CHECK(solver.audit_strategy(g.initial(), Outcome::first_win, 0));
    CHECK(solver.audit_strategy(g.initial(), Outcome::second_win, 0));
  }
  SECTION("terminal positions respect their outcome at any depth") {
    Poset empty;
    PosetGame g(empty);
    Solver<PosetGame> solver(g);
    CHECK(solver.audit_strategy(g.initial(), Outcome::second_win, 0));
    CHECK_FALSE(solver.audit_strategy(g.initial(), Outcome::first_win, 0));
  }
  SECTION("a shallow depth bound refutes only what it can see") {
    // chain of 2: taking the top removes its whole downset and empties the
    // poset, so depth 1 already reaches the winning terminal.
    Poset chain(2, {{0, 1}});
    PosetGame g(chain);
    Solver<PosetGame> solver(g);
    CHECK(solver.solve(g.initial()) == Outcome::first_win);
    CHECK(solver.audit_strategy(g.initial(), Outcome::first_win, 1));
  }
}

TEST_CASE("determinism and concurrency") {
  SECTION("warm tables do not change reports") {
    Poset p = gen_nim({3, 2, 1});
    PosetGame g(p);
    Solver<PosetGame> solver(g);
    SolveReport a = solver.optimal_moves(g.initial());
    SolveReport b = solver.optimal_moves(g.initial());
    CHECK(a.outcome == b.outcome);
    CHECK(a.optimal_moves == b.optimal_moves);
  }
  SECTION("outcome and move list are identical for any worker count") {
    MakerMakerInstance ttt = gen_tictactoe();
    SmmGame g(ttt);
    Solver<SmmGame> one(g, {.threads = 1});
    Solver<SmmGame> four(g, {.threads = 4});
    SolveReport a = one.optimal_moves(g.initial());
    SolveReport b = four.optimal_moves(g.initial());
    CHECK(a.outcome == b.outcome);
    CHECK(a.optimal_moves == b.optimal_moves);
  }
  SECTION("seat swap negates the value") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 25; ++trial) {
      Poset p = corpora::random_poset(5, rng);
      PosetGame g(p);
      Solver<PosetGame> solver(g);
      Outcome as_first = solver.solve({p.all(), Seat::first});
      Outcome as_second = solver.solve({p.all(), Seat::second});
      CHECK(as_second == negate(as_first));
    }
  }
}

TEST_CASE("resource ceiling is an error, not an approximation") {
  MakerMakerInstance ttt = gen_tictactoe();
  SmmGame g(ttt);
  Solver<SmmGame> solver(g, {.max_states = 16});
  CHECK_THROWS_AS(solver.solve(g.initial()), ResourceBoundError);
  Solver<SmmGame> threaded(g, {.max_states = 16, .threads = 4});
  CHECK_THROWS_AS(threaded.optimal_moves(g.initial()), ResourceBoundError);
}

TEST_CASE("choose-side transform") {
  SECTION("a first player win stays one via the as-first branch") {
    Poset one(1, {});
    PosetGame inner(one);
    auto wrapped = choose_side_transform(inner);
    Solver<decltype(wrapped)> solver(wrapped);
    auto start = wrapped.start(inner.initial());
    CHECK(solver.solve(start) == Outcome::first_win);
    auto rep = solver.optimal_moves(start);
    CHECK(rep.optimal_moves == std::vector<int>{kChooseFirstMove});
  }
  SECTION("a second player win flips into a first player win") {
    Poset empty;
    PosetGame inner(empty);
    auto wrapped = choose_side_transform(inner);
    Solver<decltype(wrapped)> solver(wrapped);
    auto start = wrapped.start(inner.initial());
    CHECK(solver.solve(start) == Outcome::first_win);
    auto rep = solver.optimal_moves(start);
    CHECK(rep.optimal_moves == std::vector<int>{kChooseSecondMove});
  }
  SECTION("tic-tac-toe stays a draw and both choices are optimal") {
    MakerMakerInstance ttt = gen_tictactoe();
    SmmGame inner(ttt);
    auto wrapped = choose_side_transform(inner);
    Solver<decltype(wrapped)> solver(wrapped);
    auto start = wrapped.start(inner.initial());
    auto rep = solver.optimal_moves(start);
    CHECK(rep.outcome == Outcome::draw);
    CHECK(rep.optimal_moves ==
          std::vector<int>{kChooseSecondMove, kChooseFirstMove});
  }
  SECTION("dominance: the wrapper is never a second player win") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 25; ++trial) {
      Poset p = corpora::random_poset(1 + static_cast<int>(rng() % 5), rng);
      PosetGame inner(p);
      auto wrapped = choose_side_transform(inner);
      Solver<PosetGame> plain(inner);
      Solver<decltype(wrapped)> solver(wrapped);
      Outcome x = plain.solve(inner.initial());
      Outcome best = better_for(Seat::first, x, negate(x)) ? x : negate(x);
      Outcome w = solver.solve(wrapped.start(inner.initial()));
      CHECK(w == best);
      CHECK(w != Outcome::second_win);
    }
  }
}
