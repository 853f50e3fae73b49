#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "steal/detail/text.hpp"
#include "steal/engine.hpp"
#include "steal/errors.hpp"
#include "steal/hex.hpp"
#include "steal/makermaker.hpp"

namespace steal {

// The two-board game built from a Hex position Q: universe = empty cells of
// copy Q1 (row-major), empty cells of copy Q2 (row-major), then r, then b.
// A claimed set wins iff it holds r plus a Red completion on either copy,
// or b plus Blue completions on both copies, or both of r and b.
struct ReductionArtifact {
  HexPosition source;
  std::vector<int> universe_cells;  // universe index u (and u+e) -> board cell
  int empty_cells = 0;
  int r_index = 0;
  int b_index = 0;
  MakerMakerInstance instance;
};

inline ReductionArtifact hex_to_smm(const HexPosition& q,
                                    std::uint64_t audit_seed = 0) {
  std::vector<int> cells;
  for (int i = 0; i < q.cell_count(); ++i)
    if (q.at(i / q.side(), i % q.side()) == HexCell::empty) cells.push_back(i);
  const int e = static_cast<int>(cells.size());
  const int n = 2 * e + 2;
  if (n > kMaxUniverse)
    throw ResourceBoundError("reduction universe too large");
  const int r_index = 2 * e;
  const int b_index = 2 * e + 1;

  const std::uint64_t copy_mask = full_mask(e);
  auto to_board = [cells, e](std::uint64_t claimed, int copy) {
    std::uint64_t extra = 0;
    std::uint64_t part = (claimed >> (copy * e)) & full_mask(e);
    while (part) {
      int u = std::countr_zero(part);
      part &= part - 1;
      extra |= std::uint64_t{1} << cells[u];
    }
    return extra;
  };
  (void)copy_mask;

  HexPosition board = q;
  auto pred = [board, to_board, r_index, b_index](std::uint64_t s) {
    const bool has_r = (s >> r_index) & 1;
    const bool has_b = (s >> b_index) & 1;
    if (has_r && has_b) return true;
    if (has_r && (red_complete(board, to_board(s, 0)) ||
                  red_complete(board, to_board(s, 1))))
      return true;
    if (has_b && blue_complete(board, to_board(s, 0)) &&
        blue_complete(board, to_board(s, 1)))
      return true;
    return false;
  };

  std::vector<std::string> labels;
  for (int copy = 1; copy <= 2; ++copy)
    for (int cell : cells)
      labels.push_back("q" + std::to_string(copy) + "." +
                       std::to_string(cell / q.side()) + "." +
                       std::to_string(cell % q.side()));
  labels.push_back("r");
  labels.push_back("b");

  WinFamily family = WinFamily::of_predicate(n, pred, audit_seed);
  MakerMakerInstance inst(n, family, family, identity_witness(n),
                          std::move(labels));
  return ReductionArtifact{q,       std::move(cells), e,
                           r_index, b_index,          std::move(inst)};
}

// The copy-exchange permutation: cell u of Q1 <-> cell u of Q2, r and b
// fixed.
inline std::vector<int> board_swap_permutation(const ReductionArtifact& art) {
  const int e = art.empty_cells;
  std::vector<int> perm(static_cast<size_t>(2 * e + 2));
  for (int u = 0; u < e; ++u) {
    perm[u] = u + e;
    perm[u + e] = u;
  }
  perm[art.r_index] = art.r_index;
  perm[art.b_index] = art.b_index;
  return perm;
}

inline bool swap_invariant(const ReductionArtifact& art,
                           const std::vector<int>& moves) {
  auto perm = board_swap_permutation(art);
  std::vector<int> mapped;
  mapped.reserve(moves.size());
  for (int m : moves) mapped.push_back(perm[m]);
  std::sort(mapped.begin(), mapped.end());
  return mapped == moves;
}

// The optimal-move set of the built game must be fixed by exchanging the
// two board copies.
inline bool board_swap_check(const ReductionArtifact& art,
                             SolveOptions opts = {}) {
  return swap_invariant(art, smm_move(art.instance, opts).optimal_moves);
}

struct ReductionReport {
  int universe = 0;
  bool hex_red_wins = false;
  bool symmetry_ok = false;
  bool draw_free_ok = false;
  bool moves_ok = false;
  bool swap_ok = false;
  std::vector<int> smm_moves;
  std::optional<std::uint64_t> draw_free_counterexample;

  bool pass() const {
    return symmetry_ok && draw_free_ok && moves_ok && swap_ok;
  }
};

// Audits the construction from one source position: the identity witness
// verifies, the game is draw-free over all subsets, and the optimal first
// moves encode the Hex value (exactly {b} when Blue wins Q; a nonempty set
// excluding b when Red wins Q). Also checks copy-swap invariance.
inline ReductionReport verify_reduction(const HexPosition& q,
                                        SolveOptions opts = {},
                                        std::uint64_t audit_seed = 0) {
  ReductionArtifact art = hex_to_smm(q, audit_seed);
  ReductionReport rep;
  rep.universe = art.instance.universe_size;
  rep.symmetry_ok = verify_symmetry(art.instance);
  DrawFreeReport df = draw_free_check(art.instance);
  rep.draw_free_ok = df.draw_free;
  rep.draw_free_counterexample = df.counterexample;
  rep.hex_red_wins = decision_hex(q, opts);
  rep.smm_moves = smm_move(art.instance, opts).optimal_moves;
  if (rep.hex_red_wins)
    rep.moves_ok = !rep.smm_moves.empty() &&
                   std::find(rep.smm_moves.begin(), rep.smm_moves.end(),
                             art.b_index) == rep.smm_moves.end();
  else
    rep.moves_ok = rep.smm_moves == std::vector<int>{art.b_index};
  rep.swap_ok = swap_invariant(art, rep.smm_moves);
  return rep;
}

// --- .smm reduction descriptor -------------------------------------------
//
//   smmhexred
//   hex: <path to source .hex>
//   map: <u> <copy 1|2> <row> <col>   (one line per board element)
//   r: <index>
//   b: <index>
//
// The layout is bit-exact: Q1 empty cells row-major, then Q2 empty cells
// row-major, then r, then b. The reader rebuilds the game from the source
// board and rejects a descriptor whose map disagrees.

inline std::string format_reduction_descriptor(const ReductionArtifact& art,
                                               const std::string& hex_path) {
  std::ostringstream out;
  out << "smmhexred\n";
  out << "hex: " << hex_path << "\n";
  const int e = art.empty_cells;
  for (int u = 0; u < 2 * e; ++u) {
    int cell = art.universe_cells[u % e];
    out << "map: " << u << " " << (u < e ? 1 : 2) << " "
        << cell / art.source.side() << " " << cell % art.source.side() << "\n";
  }
  out << "r: " << art.r_index << "\n";
  out << "b: " << art.b_index << "\n";
  return out.str();
}

inline ReductionArtifact parse_reduction_descriptor(
    const std::string& text, const FileLoader& load,
    std::uint64_t audit_seed = 0) {
  auto lines = detail::significant_lines(text);
  if (lines.empty() || detail::tokens(lines[0]) != std::vector<std::string>{"smmhexred"})
    throw ParseError("expected 'smmhexred' header");
  std::optional<HexPosition> board;
  std::vector<std::vector<int>> map_lines;
  std::optional<int> r_line, b_line;
  for (size_t li = 1; li < lines.size(); ++li) {
    auto t = detail::tokens(lines[li]);
    if (t.size() == 2 && t[0] == "hex:") {
      board = parse_hex(load(t[1]));
    } else if (t.size() == 5 && t[0] == "map:") {
      std::vector<int> row;
      for (size_t i = 1; i < t.size(); ++i)
        row.push_back(static_cast<int>(detail::parse_int(t[i], "map line")));
      map_lines.push_back(std::move(row));
    } else if (t.size() == 2 && (t[0] == "r:" || t[0] == "b:")) {
      (t[0] == "r:" ? r_line : b_line) =
          static_cast<int>(detail::parse_int(t[1], "special element"));
    } else {
      throw ParseError("unrecognized descriptor line: " + lines[li]);
    }
  }
  if (!board) throw ParseError("descriptor is missing the hex: line");
  ReductionArtifact art = hex_to_smm(*board, audit_seed);
  const int e = art.empty_cells;
  if (static_cast<int>(map_lines.size()) != 2 * e)
    throw ParseError("descriptor map does not cover the universe");
  for (const auto& row : map_lines) {
    int u = row[0], copy = row[1], r = row[2], c = row[3];
    if (u < 0 || u >= 2 * e || copy != (u < e ? 1 : 2) ||
        art.universe_cells[u % e] != r * board->side() + c)
      throw ParseError("descriptor map disagrees with the canonical layout");
  }
  if (r_line != art.r_index || b_line != art.b_index)
    throw ParseError("descriptor r/b indices disagree with the layout");
  return art;
}

}  // namespace steal
