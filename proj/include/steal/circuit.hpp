#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "steal/detail/bittable.hpp"
#include "steal/detail/text.hpp"
#include "steal/errors.hpp"

namespace steal {

// Boolean circuit over inputs x1..xn with AND/OR (fan-in 2) and NOT
// (fan-in 1) gates in topological order and a single output wire. Wire ids:
// 0..n-1 are inputs, n+i is gate i.
class Circuit {
 public:
  enum class Op : std::uint8_t { and_, or_, not_ };
  struct Gate {
    Op op;
    int a = 0;
    int b = 0;  // unused for NOT
  };

  Circuit(int inputs, std::vector<Gate> gates, int output)
      : inputs_(inputs), gates_(std::move(gates)), output_(output) {
    if (inputs < 0 || inputs > 62)
      throw ParseError("circuit input count must be in [0, 62]");
    int wires = inputs_;
    for (const Gate& g : gates_) {
      if (g.a < 0 || g.a >= wires || (g.op != Op::not_ && (g.b < 0 || g.b >= wires)))
        throw ParseError("gate argument references an undefined wire");
      ++wires;
    }
    if (output_ < 0 || output_ >= wires)
      throw ParseError("output references an undefined wire");
  }

  int input_count() const { return inputs_; }
  int gate_count() const { return static_cast<int>(gates_.size()); }

  // Evaluates with input i set to bit i of the assignment mask.
  bool eval(std::uint64_t assignment) const {
    std::vector<bool> value(inputs_ + gates_.size());
    for (int i = 0; i < inputs_; ++i) value[i] = (assignment >> i) & 1;
    int w = inputs_;
    for (const Gate& g : gates_) {
      switch (g.op) {
        case Op::and_: value[w] = value[g.a] && value[g.b]; break;
        case Op::or_: value[w] = value[g.a] || value[g.b]; break;
        case Op::not_: value[w] = !value[g.a]; break;
      }
      ++w;
    }
    return value[output_];
  }

 private:
  int inputs_;
  std::vector<Gate> gates_;
  int output_;
};

inline bool eval_circuit(const Circuit& c, std::uint64_t assignment) {
  return c.eval(assignment);
}

// table[T] = 1 iff some S ⊆ T is accepted by the circuit: the raw
// acceptance table followed by the superset-propagation dynamic program,
// n·2^n elementary steps.
inline detail::BitTable monotone_closure_table(const Circuit& c,
                                               int tabulation_bound = 16) {
  const int n = c.input_count();
  if (n > tabulation_bound)
    throw ResourceBoundError("circuit tabulation bounded at " +
                             std::to_string(tabulation_bound) + " inputs");
  detail::BitTable table(n);
  const std::uint64_t size = table.size();
  for (std::uint64_t t = 0; t < size; ++t) table.set(t, c.eval(t));
  for (int i = 0; i < n; ++i)
    for (std::uint64_t t = 0; t < size; ++t)
      if ((t >> i) & 1 && table.get(t ^ (std::uint64_t{1} << i)))
        table.set(t, true);
  return table;
}

// --- .circ text format --------------------------------------------------
//
//   circ <n>                inputs are named x1..xn
//   <name> = AND <a> <b>    gates may only reference earlier wires
//   <name> = OR  <a> <b>
//   <name> = NOT <a>
//   output <name>
//
// '#' starts a comment. A forward or missing reference is reported as an
// undefined wire (sequential definitions cannot form cycles).

inline Circuit parse_circuit(const std::string& text) {
  auto lines = detail::significant_lines(text);
  if (lines.empty()) throw ParseError("empty circuit file");
  auto head = detail::tokens(lines[0]);
  if (head.size() != 2 || head[0] != "circ")
    throw ParseError("expected header 'circ <n>'");
  const int n = static_cast<int>(detail::parse_int(head[1], "input count"));
  if (n < 0 || n > 62) throw ParseError("circuit input count must be in [0, 62]");

  std::unordered_map<std::string, int> wires;
  for (int i = 0; i < n; ++i) wires["x" + std::to_string(i + 1)] = i;
  auto wire = [&](const std::string& name) {
    auto it = wires.find(name);
    if (it == wires.end())
      throw ParseError("undefined wire '" + name +
                       "' (forward references would form a cycle)");
    return it->second;
  };

  std::vector<Circuit::Gate> gates;
  int output = -1;
  bool have_output = false;
  for (size_t li = 1; li < lines.size(); ++li) {
    auto t = detail::tokens(lines[li]);
    if (t.size() == 2 && t[0] == "output") {
      if (have_output) throw ParseError("multiple output lines");
      output = wire(t[1]);
      have_output = true;
      continue;
    }
    if (t.size() >= 4 && t[1] == "=") {
      if (wires.count(t[0]))
        throw ParseError("wire '" + t[0] + "' defined twice");
      Circuit::Gate g;
      if (t[2] == "AND" && t.size() == 5)
        g = {Circuit::Op::and_, wire(t[3]), wire(t[4])};
      else if (t[2] == "OR" && t.size() == 5)
        g = {Circuit::Op::or_, wire(t[3]), wire(t[4])};
      else if (t[2] == "NOT" && t.size() == 4)
        g = {Circuit::Op::not_, wire(t[3]), 0};
      else
        throw ParseError("unrecognized gate line: " + lines[li]);
      wires[t[0]] = n + static_cast<int>(gates.size());
      gates.push_back(g);
      continue;
    }
    throw ParseError("unrecognized circuit line: " + lines[li]);
  }
  if (!have_output) throw ParseError("missing output line");
  return Circuit(n, std::move(gates), output);
}

}  // namespace steal
