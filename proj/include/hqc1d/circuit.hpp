// Copyright 2026 The hqc1d Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "hqc1d/errors.hpp"
#include "hqc1d/gates.hpp"
#include "hqc1d/state.hpp"

namespace hqc1d {

/// R rounds of nearest-neighbour gates on n qubits. Slot (r, i) acts on
/// qubits (i, i+1), r in 1..R and i in 1..n-1; the control is qubit i.
/// Gates run round by round and left to right inside a round.
class Circuit {
 public:
  Circuit(int n, int rounds) : n_(n), rounds_(rounds) {
    if (n < 2) throw InvalidArgument("a circuit needs at least 2 qubits, got " + std::to_string(n));
    if (rounds < 1) throw InvalidArgument("a circuit needs at least 1 round, got " + std::to_string(rounds));
    slots_.assign(static_cast<std::size_t>(rounds) * static_cast<std::size_t>(n - 1), gates::I2());
  }

  int n() const noexcept { return n_; }
  int rounds() const noexcept { return rounds_; }
  int gates_per_round() const noexcept { return n_ - 1; }
  std::size_t gate_count() const noexcept { return slots_.size(); }

  const Gate& at(int round, int pos) const { return slots_[index(round, pos)]; }

  /// Places `gate` in slot (round, pos). One-qubit gates are promoted onto the
  /// pair, acting on qubit `pos` (on_left) or on qubit pos+1.
  void set(int round, int pos, const Gate& gate, bool on_left = true) {
    if (gate.arity() > 2)
      throw InvalidTarget("gate '" + gate.label() + "' acts on " + std::to_string(gate.arity()) +
                          " qubits; circuit slots hold nearest-neighbour pairs only");
    slots_[index(round, pos)] = gate.promoted(on_left);
  }

  /// The m-th gate in execution order (0-based).
  const Gate& gate(std::size_t m) const { return slots_.at(m); }
  int round_of(std::size_t m) const { return static_cast<int>(m / static_cast<std::size_t>(n_ - 1)) + 1; }
  int position_of(std::size_t m) const { return static_cast<int>(m % static_cast<std::size_t>(n_ - 1)) + 1; }

  /// Copy with identity rounds appended up to `total_rounds`.
  Circuit padded(int total_rounds) const {
    if (total_rounds < rounds_) throw InvalidArgument("cannot pad to fewer rounds");
    Circuit out(n_, total_rounds);
    std::copy(slots_.begin(), slots_.end(), out.slots_.begin());
    return out;
  }

  /// True when every slot holds exactly one of the listed gate labels.
  bool uses_only(std::initializer_list<std::string_view> labels) const {
    for (const auto& g : slots_) {
      bool ok = false;
      for (auto l : labels) ok = ok || g.label() == l;
      if (!ok) return false;
    }
    return true;
  }

 private:
  std::size_t index(int round, int pos) const {
    if (round < 1 || round > rounds_ || pos < 1 || pos > n_ - 1)
      throw InvalidTarget("slot (" + std::to_string(round) + ", " + std::to_string(pos) +
                          ") outside " + std::to_string(rounds_) + " rounds x " +
                          std::to_string(n_ - 1) + " positions");
    return static_cast<std::size_t>(round - 1) * static_cast<std::size_t>(n_ - 1) +
           static_cast<std::size_t>(pos - 1);
  }

  int n_;
  int rounds_;
  std::vector<Gate> slots_;
};

inline QubitState simulate_circuit(const Circuit& circuit, const QubitState& initial) {
  if (initial.n != circuit.n())
    throw DimensionMismatch("state has " + std::to_string(initial.n) + " qubits, circuit has " +
                            std::to_string(circuit.n()));
  QubitState s = initial;
  for (std::size_t m = 0; m < circuit.gate_count(); ++m) {
    const int i = circuit.position_of(m);
    s = apply_gate(s, circuit.gate(m), {i, i + 1});
  }
  return s;
}

/// Reads the line-oriented circuit format:
///
///   # comment
///   QUBITS 3
///   ROUNDS 2
///   GATE W 1 1
///
/// Unlisted slots are identities. One-qubit gates act on qubit `position`;
/// position n is accepted for them and lands on the right half of slot n-1.
inline Circuit parse_circuit(std::istream& in) {
  int n = -1, rounds = -1;
  struct Pending {
    std::string name;
    int round, pos, line;
  };
  std::vector<Pending> pending;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    std::string key;
    if (!(ls >> key)) continue;
    std::string extra;
    if (key == "QUBITS" || key == "ROUNDS") {
      int v = 0;
      if (!(ls >> v) || (ls >> extra)) throw ParseError("expected '" + key + " <integer>'", line_no);
      (key == "QUBITS" ? n : rounds) = v;
    } else if (key == "GATE") {
      Pending p{"", 0, 0, line_no};
      if (!(ls >> p.name >> p.round >> p.pos) || (ls >> extra))
        throw ParseError("expected 'GATE <name> <round> <position>'", line_no);
      pending.push_back(p);
    } else {
      throw ParseError("unknown directive '" + key + "'", line_no);
    }
  }
  if (n < 0) throw ParseError("missing QUBITS header", 0);
  if (rounds < 0) throw ParseError("missing ROUNDS header", 0);

  Circuit c = [&] {
    try {
      return Circuit(n, rounds);
    } catch (const Error& e) {
      throw ParseError(e.what(), 0);
    }
  }();
  std::vector<int> seen(c.gate_count(), 0);
  for (const auto& p : pending) {
    try {
      Gate g = gates::by_name(p.name);
      bool on_left = true;
      int pos = p.pos;
      if (g.arity() == 1 && pos == n) {
        on_left = false;
        pos = n - 1;
      }
      c.set(p.round, pos, g, on_left);
      const auto slot = static_cast<std::size_t>(p.round - 1) * static_cast<std::size_t>(n - 1) +
                        static_cast<std::size_t>(pos - 1);
      if (seen[slot]) throw ParseError("slot already holds a gate (first set on line " +
                                           std::to_string(seen[slot]) + ")",
                                       p.line);
      seen[slot] = p.line;
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(e.what(), p.line);
    }
  }
  return c;
}

inline Circuit parse_circuit(const std::string& text) {
  std::istringstream in(text);
  return parse_circuit(in);
}

inline Circuit load_circuit(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open circuit file '" + path + "'", 0);
  return parse_circuit(in);
}

}  // namespace hqc1d
