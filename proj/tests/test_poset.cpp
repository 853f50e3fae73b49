#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "steal/poset.hpp"
#include "support/corpora.hpp"
#include "support/oracles.hpp"

using namespace steal;

TEST_CASE("parse_poset") {
  SECTION("two-element chain") {
    Poset p = parse_poset("poset 2\n0 < 1\n");
    CHECK(p.size() == 2);
    CHECK(p.less(0, 1));
    CHECK_FALSE(p.less(1, 0));
    CHECK_FALSE(p.less(0, 0));
  }
  SECTION("closure adds the forced relation") {
    Poset p = parse_poset("poset 3\n0 < 1\n1 < 2\n");
    CHECK(p.less(0, 2));
  }
  SECTION("cycles are rejected") {
    CHECK_THROWS_AS(parse_poset("poset 2\n0 < 1\n1 < 0\n"), ParseError);
    CHECK_THROWS_AS(parse_poset("poset 1\n0 < 0\n"), ParseError);
    CHECK_THROWS_AS(parse_poset("poset 3\n0 < 1\n1 < 2\n2 < 0\n"), ParseError);
  }
  SECTION("malformed input") {
    CHECK_THROWS_AS(parse_poset(""), ParseError);
    CHECK_THROWS_AS(parse_poset("graph 2\n"), ParseError);
    CHECK_THROWS_AS(parse_poset("poset 2\n0 < 7\n"), ParseError);
    CHECK_THROWS_AS(parse_poset("poset 2\nnonsense\n"), ParseError);
  }
  SECTION("comments and labels") {
    Poset p = parse_poset("# a chain\nposet 2\nlabel 1 top\n0 < 1 # covers\n");
    CHECK(p.label(1) == "top");
    CHECK(p.label(0) == "0");
  }
}

TEST_CASE("downset") {
  SECTION("chain") {
    Poset p = parse_poset("poset 3\n0 < 1\n1 < 2\n");
    CHECK(p.downset(2) == 0b111u);
    CHECK(p.downset(1) == 0b011u);
    CHECK(p.downset(0) == 0b001u);
  }
  SECTION("antichain") {
    Poset p(3, {});
    CHECK(p.downset(1) == 0b010u);
  }
  SECTION("chomp 2x2 cell above the minimum") {
    // gen_chomp(2,2): indices 0=(0,0), 1=(0,1), 2=(1,0)
    Poset p = gen_chomp(2, 2).poset;
    CHECK(p.downset(1) == 0b011u);
    CHECK(p.downset(2) == 0b101u);
    CHECK_FALSE(p.less(1, 2));
    CHECK_FALSE(p.less(2, 1));
  }
  SECTION("index error") {
    Poset p(2, {});
    CHECK_THROWS_AS(p.downset(2), std::invalid_argument);
    CHECK_THROWS_AS(p.downset(-1), std::invalid_argument);
  }
}

TEST_CASE("grundy values") {
  SECTION("a chain of length 4 has grundy 4") {
    CHECK(grundy(gen_nim({4})) == 4);
  }
  SECTION("disjoint chains follow the nim sum") {
    Poset p = gen_nim({1, 2, 3});
    CHECK(grundy(p) == 0);
    CHECK(solve_poset(p).outcome == Outcome::second_win);
  }
  SECTION("empty position") {
    Poset p = gen_nim({2});
    CHECK(grundy(p, PosetPosition{0, Seat::first}) == 0);
    CHECK(solve_poset(Poset()).outcome == Outcome::second_win);
  }
  SECTION("gen_nim([2,2]) is a second player win") {
    CHECK(solve_poset(gen_nim({2, 2})).outcome == Outcome::second_win);
  }
  SECTION("matches the unmemoized recursion") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 20; ++trial) {
      Poset p = corpora::random_poset(6, rng);
      CHECK(grundy(p) == oracle::naive_grundy(p, p.all()));
    }
  }
}

TEST_CASE("grundy is zero exactly at mover losses") {
  std::mt19937_64 rng(23);
  std::vector<Poset> posets = {gen_nim({1, 2, 3}), gen_chomp(3, 3).poset,
                               gen_chomp(2, 4).poset};
  for (int trial = 0; trial < 6; ++trial)
    posets.push_back(corpora::random_poset(6, rng));
  for (const Poset& p : posets) {
    REQUIRE(p.size() <= 10);
    PosetGame g(p);
    Solver<PosetGame> solver(g);
    for (std::uint64_t rem = 0; rem <= p.all(); ++rem) {
      if (!is_up_closed(p, rem)) continue;
      bool mover_loses =
          solver.solve(PosetPosition{rem, Seat::first}) == Outcome::second_win;
      CHECK((grundy(p, PosetPosition{rem, Seat::first}) == 0) == mover_loses);
      if (rem == p.all()) break;
    }
  }
}

TEST_CASE("nim-sum oracle on seeded chain multisets") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<int> chains = corpora::random_chain_multiset(rng);
    Poset p = gen_nim(chains);
    int g = grundy(p);
    CHECK(g == oracle::nim_sum(chains));
    CHECK((solve_poset(p).outcome == Outcome::first_win) == (g != 0));
  }
}

TEST_CASE("reachable poset positions stay up-closed") {
  Poset p = gen_chomp(3, 3).poset;
  PosetGame g(p);
  std::set<std::uint64_t> seen;
  std::vector<PosetPosition> frontier = {g.initial()};
  while (!frontier.empty()) {
    PosetPosition pos = frontier.back();
    frontier.pop_back();
    if (!seen.insert(g.key(pos)).second) continue;
    CHECK(is_up_closed(p, pos.remaining));
    for (int mv : g.moves(pos)) frontier.push_back(g.apply(pos, mv));
  }
  CHECK(seen.size() > 1);
}

TEST_CASE("add_minimum") {
  SECTION("empty poset becomes the singleton m") {
    MinimumPoset mp = add_minimum(Poset());
    CHECK(mp.poset.size() == 1);
    CHECK(mp.min_index == 0);
    CHECK(mp.poset.label(0) == "m");
  }
  SECTION("antichain of two gains a common lower bound") {
    MinimumPoset mp = add_minimum(Poset(2, {}));
    CHECK(mp.poset.size() == 3);
    CHECK(mp.min_index == 2);
    CHECK(mp.poset.less(2, 0));
    CHECK(mp.poset.less(2, 1));
    CHECK_FALSE(mp.poset.less(0, 1));
  }
  SECTION("a chain grows by one") {
    MinimumPoset mp = add_minimum(parse_poset("poset 2\n0 < 1\n"));
    CHECK(mp.poset.size() == 3);
    CHECK(mp.poset.less(2, 0));
    CHECK(mp.poset.less(2, 1));
    CHECK(mp.poset.less(0, 1));
  }
  SECTION("always yields a first player win") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 20; ++trial) {
      Poset p = corpora::random_poset(1 + static_cast<int>(rng() % 6), rng);
      CHECK(solve_poset(add_minimum(p).poset).outcome == Outcome::first_win);
    }
  }
}

TEST_CASE("mp_move") {
  SECTION("the singleton: taking m empties the poset") {
    SolveReport rep = mp_move(add_minimum(Poset()));
    CHECK(rep.optimal_moves == std::vector<int>{0});
  }
  SECTION("minimum under one element: only the top wins") {
    MinimumPoset mp = add_minimum(Poset(1, {}));
    SolveReport rep = mp_move(mp);
    CHECK(mp.min_index == 1);
    CHECK(rep.optimal_moves == std::vector<int>{0});
  }
  SECTION("chomp 2x2 via its own minimum") {
    MinimumPoset mp = gen_chomp(2, 2);
    SolveReport rep = mp_move(mp);
    CHECK(rep.outcome == Outcome::first_win);
    CHECK_FALSE(rep.optimal_moves.empty());
    // brute force over the 3-element tree: only eating the minimum wins —
    // any other move removes the minimum as well and leaves a single cell
    CHECK(rep.optimal_moves == std::vector<int>{0});
    PosetGame g(mp.poset);
    CHECK(rep.optimal_moves == oracle::naive_optimal_moves(g, g.initial()));
  }
  SECTION("as_minimum_poset rejects posets without a minimum") {
    CHECK_THROWS_AS(as_minimum_poset(Poset(2, {})), std::invalid_argument);
    CHECK(as_minimum_poset(gen_chomp(2, 2).poset).min_index == 0);
  }
}

TEST_CASE("verify_mphard_instance") {
  SECTION("empty poset: second player win, unique move m") {
    MpHardReport rep = verify_mphard_instance(Poset());
    CHECK(rep.pass);
    CHECK(rep.p_outcome == Outcome::second_win);
    CHECK(rep.mp_moves == std::vector<int>{rep.m_index});
  }
  SECTION("one element: first player win, m excluded") {
    MpHardReport rep = verify_mphard_instance(Poset(1, {}));
    CHECK(rep.pass);
    CHECK(rep.p_outcome == Outcome::first_win);
    for (int mv : rep.mp_moves) CHECK(mv != rep.m_index);
  }
  SECTION("chains 1,2,3: second player win by nim sum") {
    MpHardReport rep = verify_mphard_instance(gen_nim({1, 2, 3}));
    CHECK(rep.pass);
    CHECK(rep.p_outcome == Outcome::second_win);
    CHECK(rep.mp_moves == std::vector<int>{rep.m_index});
  }
}

TEST_CASE("generators") {
  SECTION("chomp 1x2 keeps a single square") {
    CHECK(gen_chomp(1, 2).poset.size() == 1);
    CHECK(gen_chomp(2, 1).poset.size() == 1);
  }
  SECTION("chomp rejects the bare poisoned square") {
    CHECK_THROWS_AS(gen_chomp(1, 1), std::invalid_argument);
  }
  SECTION("chomp order matches the grid order") {
    Poset p = gen_chomp(3, 4).poset;
    auto idx = [&](int i, int j) { return i * 4 + j; };
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 4; ++j)
        for (int i2 = 0; i2 < 3; ++i2)
          for (int j2 = 0; j2 < 4; ++j2) {
            if ((i == 2 && j == 3) || (i2 == 2 && j2 == 3)) continue;
            bool expect = i <= i2 && j <= j2 && (i != i2 || j != j2);
            CHECK(p.less(idx(i, j), idx(i2, j2)) == expect);
          }
  }
  SECTION("nim chains validate lengths") {
    CHECK_THROWS_AS(gen_nim({2, 0}), std::invalid_argument);
    CHECK(gen_nim({3}).size() == 3);
  }
}

TEST_CASE("poset text round trip") {
  SECTION("writer emits covers only") {
    std::string text = format_poset(parse_poset("poset 3\n0 < 1\n1 < 2\n0 < 2\n"));
    CHECK(text == "poset 3\n0 < 1\n1 < 2\n");
  }
  SECTION("round trips preserve the order and labels") {
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 20; ++trial) {
      Poset p = corpora::random_poset(6, rng);
      CHECK(parse_poset(format_poset(p)) == p);
    }
    Poset chomp = gen_chomp(3, 3).poset;
    CHECK(parse_poset(format_poset(chomp)) == chomp);
    Poset withmin = add_minimum(gen_nim({2, 2})).poset;
    CHECK(parse_poset(format_poset(withmin)) == withmin);
  }
}
