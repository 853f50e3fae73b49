#pragma once

#include <CLI11.hpp>

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "steal/steal.hpp"

namespace steal::cli {

// Exit codes: 0 solved/pass, 1 fail or counterexample, 2 usage or input
// error, 3 resource bound exceeded.
inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitResource = 3;

namespace detail_cli {

// key=value report, emitted sorted by key.
class Report {
 public:
  void add(const std::string& key, const std::string& value) {
    lines_[key] = value;
  }
  void add(const std::string& key, bool v) { add(key, v ? "true" : "false"); }
  void add(const std::string& key, std::uint64_t v) {
    add(key, std::to_string(v));
  }
  void add(const std::string& key, int v) { add(key, std::to_string(v)); }
  void add(const std::string& key, Outcome o) { add(key, to_string(o)); }
  void print(std::ostream& out) const {
    for (const auto& [k, v] : lines_) out << k << "=" << v << "\n";
  }

 private:
  std::map<std::string, std::string> lines_;
};

template <typename NameFn>
std::string join_moves(const std::vector<int>& moves, NameFn name) {
  std::string out;
  for (size_t i = 0; i < moves.size(); ++i) {
    if (i) out += ",";
    out += name(moves[i]);
  }
  return out;
}

inline std::string join_indices(const std::vector<int>& moves) {
  return join_moves(moves, [](int m) { return std::to_string(m); });
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write file: " + path);
  out << text;
}

}  // namespace detail_cli

inline int run(std::vector<std::string> args, std::ostream& out,
               std::ostream& err) {
  using detail_cli::Report;

  CLI::App app{"combinatorial game solving toolkit"};
  app.require_subcommand(1);

  std::uint64_t max_states = SolveOptions{}.max_states;
  unsigned threads = 1;
  std::uint64_t seed = 0;
  app.add_option("--max-states", max_states,
                 "ceiling on stored solver states")
      ->envname("STEAL_MAX_STATES");
  app.add_option("--threads", threads, "worker count (output-invariant)");
  app.add_option("--seed", seed, "seed for randomized spot checks");

  int exit_code = kExitPass;
  auto opts = [&] { return SolveOptions{max_states, threads}; };

  // ---- solve ----
  auto* solve_cmd = app.add_subcommand("solve", "solve a game file");
  solve_cmd->require_subcommand(1);
  std::string solve_poset_file, solve_hex_file, solve_smm_file;

  auto* sp = solve_cmd->add_subcommand("poset", "poset game value");
  sp->add_option("file", solve_poset_file, ".poset file")->required();
  sp->callback([&] {
    Poset p = parse_poset(read_file(solve_poset_file));
    Report rep;
    rep.add("outcome", solve_poset(p, opts()).outcome);
    rep.print(out);
  });

  auto* sh = solve_cmd->add_subcommand("hex", "Red-to-move Hex decision");
  sh->add_option("file", solve_hex_file, ".hex file")->required();
  sh->callback([&] {
    HexPosition q = parse_hex(read_file(solve_hex_file));
    bool red = decision_hex(q, opts());
    Report rep;
    rep.add("blue_stones", std::uint64_t(std::popcount(q.blue_mask())));
    rep.add("empty_cells", std::uint64_t(std::popcount(q.empty_mask())));
    rep.add("outcome", red ? Outcome::first_win : Outcome::second_win);
    rep.add("red_stones", std::uint64_t(std::popcount(q.red_mask())));
    rep.add("red_wins", red);
    rep.print(out);
  });

  auto* ss = solve_cmd->add_subcommand("smm", "Maker-Maker game value");
  ss->add_option("file", solve_smm_file, ".smm file")->required();
  ss->callback([&] {
    LoadedSmm loaded = load_smm_file(solve_smm_file, seed);
    Report rep;
    rep.add("outcome", solve_smm(loaded.instance, opts()));
    rep.print(out);
  });

  // ---- mpmove ----
  std::string mpmove_file;
  auto* mp = app.add_subcommand("mpmove",
                                "winning first moves of a minimum poset game");
  mp->add_option("file", mpmove_file, ".poset file")->required();
  mp->callback([&] {
    MinimumPoset m = as_minimum_poset(parse_poset(read_file(mpmove_file)));
    SolveReport r = mp_move(m, opts());
    Report rep;
    rep.add("moves", detail_cli::join_moves(r.optimal_moves, [&](int mv) {
              return m.poset.label(mv);
            }));
    rep.add("outcome", r.outcome);
    rep.print(out);
  });

  // ---- smmmove ----
  std::string smmmove_file;
  auto* sm = app.add_subcommand("smmmove",
                                "optimal first moves of a Maker-Maker game");
  sm->add_option("file", smmmove_file, ".smm file")->required();
  sm->callback([&] {
    LoadedSmm loaded = load_smm_file(smmmove_file, seed);
    SolveReport r = smm_move(loaded.instance, opts());
    Report rep;
    rep.add("moves", detail_cli::join_moves(r.optimal_moves, [&](int mv) {
              return loaded.instance.element_name(mv);
            }));
    rep.add("outcome", r.outcome);
    rep.print(out);
  });

  // ---- addmin ----
  std::string addmin_file, addmin_out;
  auto* am = app.add_subcommand("addmin", "add a minimum element to a poset");
  am->add_option("file", addmin_file, ".poset file")->required();
  am->add_option("-o,--output", addmin_out, "output .poset file")->required();
  am->callback([&] {
    MinimumPoset m = add_minimum(parse_poset(read_file(addmin_file)));
    detail_cli::write_file(addmin_out, format_poset(m.poset));
    Report rep;
    rep.add("minimum", m.poset.label(m.min_index));
    rep.add("n", m.poset.size());
    rep.add("out", addmin_out);
    rep.print(out);
  });

  // ---- reduce hex2smm ----
  std::string reduce_file, reduce_out;
  auto* red_cmd = app.add_subcommand("reduce", "build reduction instances");
  red_cmd->require_subcommand(1);
  auto* h2s = red_cmd->add_subcommand("hex2smm",
                                      "two-board game from a Hex position");
  h2s->add_option("file", reduce_file, ".hex file")->required();
  h2s->add_option("-o,--output", reduce_out, "output .smm descriptor")
      ->required();
  h2s->callback([&] {
    HexPosition q = parse_hex(read_file(reduce_file));
    ReductionArtifact art = hex_to_smm(q, seed);
    // reference the source board relative to the descriptor's directory
    auto rel = std::filesystem::proximate(
        reduce_file, std::filesystem::path(reduce_out).parent_path());
    detail_cli::write_file(reduce_out,
                           format_reduction_descriptor(art, rel.string()));
    Report rep;
    rep.add("empty_cells", art.empty_cells);
    rep.add("out", reduce_out);
    rep.add("universe", art.instance.universe_size);
    rep.print(out);
  });

  // ---- verify ----
  auto* verify_cmd = app.add_subcommand("verify", "audit a construction");
  verify_cmd->require_subcommand(1);

  std::string mphard_file;
  auto* vm = verify_cmd->add_subcommand(
      "mphard", "add-minimum biconditional on one poset");
  vm->add_option("file", mphard_file, ".poset file")->required();
  vm->callback([&] {
    Poset p = parse_poset(read_file(mphard_file));
    MpHardReport r = verify_mphard_instance(p, opts());
    MinimumPoset mp = add_minimum(p);
    Report rep;
    rep.add("mp_winning_moves",
            detail_cli::join_moves(r.mp_moves, [&](int mv) {
              return mp.poset.label(mv);
            }));
    rep.add("p_outcome", r.p_outcome);
    rep.add("verdict", r.pass ? "pass" : "fail");
    rep.print(out);
    if (!r.pass) exit_code = kExitFail;
  });

  std::string vred_file;
  auto* vr = verify_cmd->add_subcommand(
      "reduction", "two-board construction lemmas from a Hex position");
  vr->add_option("file", vred_file, ".hex file")->required();
  vr->callback([&] {
    HexPosition q = parse_hex(read_file(vred_file));
    ReductionReport r = verify_reduction(q, opts(), seed);
    ReductionArtifact art = hex_to_smm(q, seed);
    Report rep;
    rep.add("drawfree", r.draw_free_ok ? "pass" : "fail");
    if (r.draw_free_counterexample)
      rep.add("drawfree_witness",
              std::uint64_t(*r.draw_free_counterexample));
    rep.add("hex_red_wins", r.hex_red_wins);
    rep.add("moves_check", r.moves_ok ? "pass" : "fail");
    rep.add("smm_moves", detail_cli::join_moves(r.smm_moves, [&](int mv) {
              return art.instance.element_name(mv);
            }));
    rep.add("swap", r.swap_ok ? "pass" : "fail");
    rep.add("symmetry", r.symmetry_ok ? "pass" : "fail");
    rep.add("universe", r.universe);
    rep.add("verdict", r.pass() ? "pass" : "fail");
    rep.print(out);
    if (!r.pass()) exit_code = kExitFail;
  });

  // ---- check ----
  auto* check_cmd = app.add_subcommand("check", "property checks");
  check_cmd->require_subcommand(1);

  std::string drawfree_file;
  auto* cd = check_cmd->add_subcommand("drawfree",
                                       "every subset split contains a win");
  cd->add_option("file", drawfree_file, ".smm file")->required();
  cd->callback([&] {
    LoadedSmm loaded = load_smm_file(drawfree_file, seed);
    DrawFreeReport r = draw_free_check(loaded.instance);
    Report rep;
    rep.add("drawfree", r.draw_free);
    rep.add("verdict", r.draw_free ? "pass" : "fail");
    if (r.counterexample) {
      std::vector<int> elems;
      for (std::uint64_t rest = *r.counterexample; rest;) {
        elems.push_back(std::countr_zero(rest));
        rest &= rest - 1;
      }
      rep.add("witness", detail_cli::join_moves(elems, [&](int e) {
                return loaded.instance.element_name(e);
              }));
    }
    rep.print(out);
    if (!r.draw_free) exit_code = kExitFail;
  });

  std::string symmetry_file;
  auto* cs = check_cmd->add_subcommand("symmetry",
                                       "verify the attached witness");
  cs->add_option("file", symmetry_file, ".smm file")->required();
  cs->callback([&] {
    LoadedSmm loaded = load_smm_file(symmetry_file, seed);
    bool ok = verify_symmetry(loaded.instance);
    Report rep;
    rep.add("symmetric", ok);
    rep.add("verdict", ok ? "pass" : "fail");
    rep.print(out);
    if (!ok) exit_code = kExitFail;
  });

  int hextheorem_n = 0;
  auto* ch = check_cmd->add_subcommand(
      "hextheorem", "no full coloring is drawn or doubly won");
  ch->add_option("n", hextheorem_n, "board side")->required();
  ch->callback([&] {
    bool ok = hex_no_draw_check(hextheorem_n);
    Report rep;
    rep.add("colorings",
            std::uint64_t{1} << (hextheorem_n * hextheorem_n));
    rep.add("verdict", ok ? "pass" : "fail");
    rep.print(out);
    if (!ok) exit_code = kExitFail;
  });

  // ---- gen ----
  auto* gen_cmd = app.add_subcommand("gen", "instance generators");
  gen_cmd->require_subcommand(1);
  std::string gen_out;

  auto emit_poset = [&](const Poset& p) {
    std::string text = format_poset(p);
    if (gen_out.empty()) {
      out << text;
      return;
    }
    detail_cli::write_file(gen_out, text);
    Report rep;
    rep.add("elements", p.size());
    rep.add("out", gen_out);
    rep.print(out);
  };
  auto emit_smm = [&](const MakerMakerInstance& inst) {
    std::string text = format_smm(inst);
    if (gen_out.empty()) {
      out << text;
      return;
    }
    detail_cli::write_file(gen_out, text);
    Report rep;
    rep.add("out", gen_out);
    rep.add("sets", std::uint64_t(inst.w1.sets().size()));
    rep.add("universe", inst.universe_size);
    rep.print(out);
  };

  int chomp_rows = 0, chomp_cols = 0;
  auto* gc = gen_cmd->add_subcommand("chomp", "Chomp poset");
  gc->add_option("rows", chomp_rows)->required();
  gc->add_option("cols", chomp_cols)->required();
  gc->add_option("-o,--output", gen_out, "output file");
  gc->callback([&] { emit_poset(gen_chomp(chomp_rows, chomp_cols).poset); });

  std::string nim_spec;
  auto* gn = gen_cmd->add_subcommand("nim", "disjoint chains poset");
  gn->add_option("chains", nim_spec, "comma-separated chain lengths")
      ->required();
  gn->add_option("-o,--output", gen_out, "output file");
  gn->callback([&] {
    std::vector<int> chains;
    std::stringstream ss(nim_spec);
    std::string item;
    while (std::getline(ss, item, ','))
      chains.push_back(
          static_cast<int>(steal::detail::parse_int(item, "chain length")));
    if (chains.empty()) throw ParseError("empty chain list");
    emit_poset(gen_nim(chains));
  });

  int gen_n = 0, gen_k = 0;
  auto* gq = gen_cmd->add_subcommand("clique", "clique game on K_n edges");
  gq->add_option("n", gen_n)->required();
  gq->add_option("k", gen_k)->required();
  gq->add_option("-o,--output", gen_out, "output file");
  gq->callback([&] { emit_smm(gen_clique(gen_n, gen_k)); });

  int ap_n = 0, ap_k = 0;
  auto* ga = gen_cmd->add_subcommand("ap", "arithmetic progression game");
  ga->add_option("n", ap_n)->required();
  ga->add_option("k", ap_k)->required();
  ga->add_option("-o,--output", gen_out, "output file");
  ga->callback([&] { emit_smm(gen_ap(ap_n, ap_k)); });

  int hy_k = 0, hy_d = 0;
  auto* gh = gen_cmd->add_subcommand("hyperttt", "hypercube tic-tac-toe");
  gh->add_option("k", hy_k)->required();
  gh->add_option("d", hy_d)->required();
  gh->add_option("-o,--output", gen_out, "output file");
  gh->callback([&] { emit_smm(gen_hypercube_ttt(hy_k, hy_d)); });

  auto* gt = gen_cmd->add_subcommand("tictactoe", "classic 3x3 board");
  gt->add_option("-o,--output", gen_out, "output file");
  gt->callback([&] { emit_smm(gen_tictactoe()); });

  try {
    std::reverse(args.begin(), args.end());  // CLI11 consumes reversed argv
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kExitUsage;
  } catch (const ResourceBoundError& e) {
    err << "resource bound: " << e.what() << "\n";
    return kExitResource;
  } catch (const TerminalPositionError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "input error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "file error: " << e.what() << "\n";
    return kExitUsage;
  }
  return exit_code;
}

}  // namespace steal::cli
