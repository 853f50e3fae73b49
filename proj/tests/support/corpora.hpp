#pragma once

// Instance corpora shared by the unit and acceptance suites.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <utility>
#include <vector>

#include "steal/hex.hpp"
#include "steal/poset.hpp"

namespace corpora {

// Every labeled strict partial order on n elements, by filtering all
// irreflexive relations for transitivity and antisymmetry. Counts are the
// known ones: 1, 1, 3, 19, 219 for n = 0..4.
inline std::vector<steal::Poset> all_posets(int n) {
  if (n < 0 || n > 4) throw std::invalid_argument("enumeration supports n <= 4");
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) pairs.emplace_back(i, j);
  std::vector<steal::Poset> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs.size());
       ++mask) {
    bool rel[4][4] = {};
    for (size_t p = 0; p < pairs.size(); ++p)
      if ((mask >> p) & 1) rel[pairs[p].first][pairs[p].second] = true;
    bool ok = true;
    for (int x = 0; x < n && ok; ++x)
      for (int y = 0; y < n && ok; ++y) {
        if (rel[x][y] && rel[y][x]) ok = false;
        for (int z = 0; z < n && ok; ++z)
          if (rel[x][y] && rel[y][z] && !rel[x][z]) ok = false;
      }
    if (!ok) continue;
    std::vector<std::pair<int, int>> rels;
    for (size_t p = 0; p < pairs.size(); ++p)
      if ((mask >> p) & 1) rels.push_back(pairs[p]);
    out.emplace_back(n, rels);
  }
  return out;
}

// Random poset: coin-flip relation above a fixed linear extension, then
// closed transitively by the constructor.
inline steal::Poset random_poset(int n, std::mt19937_64& rng) {
  std::vector<std::pair<int, int>> rels;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (rng() & 1) rels.emplace_back(i, j);
  return steal::Poset(n, rels);
}

inline std::vector<int> random_chain_multiset(std::mt19937_64& rng,
                                              int max_total = 12) {
  const int count = 1 + static_cast<int>(rng() % 4);
  std::vector<int> chains;
  int total = 0;
  for (int i = 0; i < count; ++i) {
    int len = 1 + static_cast<int>(rng() % 6);
    if (total + len > max_total) break;
    chains.push_back(len);
    total += len;
  }
  if (chains.empty()) chains.push_back(1);
  return chains;
}

// Random 3x3 Hex board with at most `max_empty` empty cells (so at least
// 9 - max_empty pre-placed stones).
inline steal::HexPosition random_hex3(std::mt19937_64& rng,
                                      int max_empty = 5) {
  steal::HexPosition q(3);
  std::vector<int> cells(9);
  std::iota(cells.begin(), cells.end(), 0);
  std::shuffle(cells.begin(), cells.end(), rng);
  const int empties = static_cast<int>(rng() % (max_empty + 1));
  for (int i = empties; i < 9; ++i) {
    int cell = cells[i];
    q.set(cell / 3, cell % 3,
          (rng() & 1) ? steal::HexCell::red : steal::HexCell::blue);
  }
  return q;
}

}  // namespace corpora
