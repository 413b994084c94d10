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

#include <array>
#include <cstdint>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hqc1d/circuit.hpp"
#include "hqc1d/errors.hpp"
#include "hqc1d/history.hpp"

/// Five-level, three-site rewrite machine without translation invariance.
///
/// Sites alternate between two families. Odd sites (the first site is odd)
/// hold one of MOV, MOVLE, TUR, BUL, PLUS; even sites hold Q, G or BLANK,
/// where Q and G are placeholders for a logical qubit whose value is kept in
/// a separate register. The lattice has one leading site followed by R blocks
/// of 2n sites; block boundaries are geometry, not site states.
namespace hqc1d::ham5 {

enum class Symbol : std::uint8_t { Mov, MovLe, Tur, Bul, Plus, Qubit, Gate, Blank };

inline bool is_odd_family(Symbol s) noexcept { return s <= Symbol::Plus; }
inline bool is_placeholder(Symbol s) noexcept { return s == Symbol::Qubit || s == Symbol::Gate; }

inline std::string_view glyph(Symbol s) {
  switch (s) {
    case Symbol::Mov: return "MOV";
    case Symbol::MovLe: return "MOVLE";
    case Symbol::Tur: return "TUR";
    case Symbol::Bul: return "BUL";
    case Symbol::Plus: return "PLUS";
    case Symbol::Qubit: return "Q";
    case Symbol::Gate: return "G";
    case Symbol::Blank: return "BLANK";
  }
  return "?";
}

inline std::optional<Symbol> symbol_from_glyph(std::string_view g) {
  for (auto s : {Symbol::Mov, Symbol::MovLe, Symbol::Tur, Symbol::Bul, Symbol::Plus, Symbol::Qubit,
                 Symbol::Gate, Symbol::Blank})
    if (glyph(s) == g) return s;
  return std::nullopt;
}

/// Site count and block geometry for n qubits and R rounds.
struct Lattice {
  int n = 0;
  int rounds = 0;

  Lattice(int n_, int rounds_) : n(n_), rounds(rounds_) {
    if (n < 2) throw InvalidArgument("ham5 needs n >= 2, got " + std::to_string(n));
    if (rounds < 1) throw InvalidArgument("ham5 needs R >= 1, got " + std::to_string(rounds));
  }

  std::size_t size() const noexcept { return 1 + 2 * static_cast<std::size_t>(n) * static_cast<std::size_t>(rounds); }
  std::size_t block_width() const noexcept { return 2 * static_cast<std::size_t>(n); }

  /// True when a block boundary separates site i from site i+1 (0-based).
  bool boundary_after(std::size_t i) const noexcept {
    return i + 1 < size() && i % block_width() == 0;
  }
  bool at_right_edge(std::size_t i) const noexcept { return i + 1 == size(); }

  /// Block holding site i: 0 for the leading site, 1..R otherwise.
  int block_of(std::size_t i) const noexcept {
    return i == 0 ? 0 : static_cast<int>((i - 1) / block_width()) + 1;
  }
  /// Qubit slot (1-based) of an even-family site inside its block.
  int slot_of(std::size_t i) const noexcept { return static_cast<int>(((i - 1) % block_width()) / 2) + 1; }

  bool operator==(const Lattice&) const = default;
};

struct Config {
  Lattice lattice;
  std::vector<Symbol> sites;

  Config(Lattice l, std::vector<Symbol> s) : lattice(l), sites(std::move(s)) {
    if (sites.size() != lattice.size())
      throw InvalidArgument("configuration has " + std::to_string(sites.size()) + " sites, lattice needs " +
                            std::to_string(lattice.size()));
    for (std::size_t i = 0; i < sites.size(); ++i)
      if (is_odd_family(sites[i]) != (i % 2 == 0))
        throw InvalidArgument("symbol " + std::string(glyph(sites[i])) + " on the wrong site family at " +
                              std::to_string(i));
  }

  std::string key() const {
    std::string k;
    k.reserve(sites.size());
    for (auto s : sites) k.push_back(static_cast<char>('a' + static_cast<int>(s)));
    return k;
  }

  /// Number of qubit placeholders strictly left of site i.
  int placeholders_before(std::size_t i) const {
    int k = 0;
    for (std::size_t j = 0; j < i; ++j) k += is_placeholder(sites[j]);
    return k;
  }

  bool operator==(const Config& o) const { return lattice == o.lattice && sites == o.sites; }
};

/// Geometric side condition of a rule, evaluated at the window start.
enum class Where : std::uint8_t {
  Anywhere,
  GateSlot,          // sites 0 and 2 are neighbouring qubit slots of one block
  BoundaryAfter0,    // a block boundary between window sites 0 and 1
  NoBoundaryAfter0,
  BoundaryAfter1,    // a block boundary between window sites 1 and 2
  NoBoundaryAfter2,  // neither a block boundary nor the lattice edge follows site 2
};

inline bool holds(Where w, const Lattice& l, std::size_t i) {
  switch (w) {
    case Where::Anywhere: return true;
    case Where::GateSlot:
      return i % 2 == 1 && l.block_of(i) >= 1 && l.block_of(i) == l.block_of(i + 2);
    case Where::BoundaryAfter0: return l.boundary_after(i);
    case Where::NoBoundaryAfter0: return !l.boundary_after(i);
    case Where::BoundaryAfter1: return l.boundary_after(i + 1);
    case Where::NoBoundaryAfter2: return !l.boundary_after(i + 2) && !l.at_right_edge(i + 2);
  }
  return false;
}

struct Rule {
  std::string name;
  std::array<Symbol, 3> from;
  std::array<Symbol, 3> to;
  Where where = Where::Anywhere;
  bool carries_gate = false;
};

/// The complete forward rule table; backward moves read it right to left.
inline const std::vector<Rule>& rules() {
  using enum Symbol;
  static const std::vector<Rule> table = {
      {"1", {Gate, Plus, Qubit}, {Qubit, Plus, Gate}, Where::GateSlot, true},
      {"2", {Gate, Bul, Blank}, {Qubit, Tur, Blank}, Where::BoundaryAfter1},
      {"3", {Tur, Blank, Bul}, {MovLe, Blank, Bul}},
      {"4", {Qubit, MovLe, Blank}, {Blank, MovLe, Qubit}},
      {"5a", {Plus, Blank, MovLe}, {MovLe, Blank, Plus}},
      {"5b", {Bul, Blank, MovLe}, {Bul, Blank, Tur}},
      {"6a", {Tur, Qubit, Plus}, {Bul, Gate, Plus}, Where::BoundaryAfter0},
      {"6b", {Tur, Qubit, Plus}, {Bul, Qubit, Mov}, Where::NoBoundaryAfter0},
      {"7a", {Mov, Qubit, Plus}, {Plus, Qubit, Mov}},
      {"7b", {Mov, Qubit, Bul}, {Plus, Qubit, Tur}, Where::NoBoundaryAfter2},
  };
  return table;
}

inline Config initial_config(int n, int rounds) {
  Lattice l(n, rounds);
  std::vector<Symbol> s;
  s.reserve(l.size());
  s.push_back(Symbol::Tur);
  for (int q = 0; q < n; ++q) {
    s.push_back(Symbol::Qubit);
    s.push_back(q + 1 < n ? Symbol::Plus : Symbol::Bul);
  }
  for (int b = 1; b < rounds; ++b)
    for (int q = 0; q < n; ++q) {
      s.push_back(Symbol::Blank);
      s.push_back(Symbol::Bul);
    }
  return Config(l, std::move(s));
}

/// Closed form for the number of transitions of the n-qubit, R-round machine.
inline std::size_t transition_count(int n, int rounds) {
  const auto nn = static_cast<std::size_t>(n);
  return nn + static_cast<std::size_t>(rounds - 1) * (3 * nn * nn + nn + 1);
}

/// The rewrite machine for one circuit. The gate fired by rule 1 depends on
/// the slot: qubit slot i of block b applies the circuit's gate (b, i).
class Machine {
 public:
  using Config = ham5::Config;

  explicit Machine(Circuit circuit) : circuit_(std::move(circuit)), lattice_(circuit_.n(), circuit_.rounds()) {}
  Machine(int n, int rounds) : Machine(Circuit(n, rounds)) {}

  const Circuit& circuit() const noexcept { return circuit_; }
  const Lattice& lattice() const noexcept { return lattice_; }

  Config initial() const { return initial_config(lattice_.n, lattice_.rounds); }

  std::optional<Step<Config>> forward(const Config& c) const { return move(c, true); }
  std::optional<Step<Config>> backward(const Config& c) const { return move(c, false); }

  /// Circuit gate index fired by rule 1 when its window starts at site i.
  std::size_t gate_index_at(std::size_t i) const {
    return static_cast<std::size_t>(lattice_.block_of(i) - 1) * static_cast<std::size_t>(lattice_.n - 1) +
           static_cast<std::size_t>(lattice_.slot_of(i) - 1);
  }

 private:
  std::optional<Step<Config>> move(const Config& c, bool fwd) const {
    if (!(c.lattice == lattice_)) throw InvalidArgument("configuration lattice does not match the machine");
    const auto& table = rules();
    const Rule* hit = nullptr;
    std::size_t at = 0;
    for (std::size_t i = 0; i + 2 < c.sites.size(); ++i) {
      for (const auto& r : table) {
        const auto& pat = fwd ? r.from : r.to;
        if (c.sites[i] != pat[0] || c.sites[i + 1] != pat[1] || c.sites[i + 2] != pat[2]) continue;
        if (!holds(r.where, lattice_, i)) continue;
        if (hit)
          throw RuleEngineError(std::string(fwd ? "forward" : "backward") + " rules " + hit->name + "@" +
                                std::to_string(at) + " and " + r.name + "@" + std::to_string(i) +
                                " both match");
        hit = &r;
        at = i;
      }
    }
    if (!hit) return std::nullopt;

    Step<Config> step{c, fwd ? hit->name : hit->name + "^dag", std::nullopt};
    const auto& out = fwd ? hit->to : hit->from;
    for (int k = 0; k < 3; ++k) step.next.sites[at + static_cast<std::size_t>(k)] = out[static_cast<std::size_t>(k)];
    if (hit->carries_gate) {
      const std::size_t m = gate_index_at(at);
      const auto& g = circuit_.gate(m);
      const int left = c.placeholders_before(at) + 1;
      GateEvent e;
      e.label = fwd ? g.label() : g.label() + "^dag";
      e.action = fwd ? g.matrix() : Matrix(g.matrix().adjoint());
      e.qubits = {left, left + 1};
      e.gate_index = m;
      e.adjoint = !fwd;
      step.event = std::move(e);
    }
    return step;
  }

  Circuit circuit_;
  Lattice lattice_;
};

inline HistoryTrace<Config> enumerate(const Machine& m) { return enumerate_history(m); }
inline HistoryTrace<Config> enumerate(int n, int rounds) { return enumerate_history(Machine(n, rounds)); }
inline HistoryTrace<Config> enumerate(const Circuit& c) { return enumerate_history(Machine(c)); }

/// One Hamiltonian term -|to><from| on a three-site window, with `unitary`
/// acting on the logical qubits held at window sites 0 and 2 when present.
/// Forward and reverse directions are listed as separate terms.
struct LocalTerm {
  std::size_t site = 0;
  std::string rule;
  std::array<Symbol, 3> from;
  std::array<Symbol, 3> to;
  std::optional<Matrix> unitary;
  double coefficient = -1.0;
};

/// Every term of the machine's Hamiltonian, placed at each window where the
/// rule's geometric condition holds.
inline std::vector<LocalTerm> local_terms(const Machine& m) {
  std::vector<LocalTerm> terms;
  const auto& l = m.lattice();
  for (const auto& r : rules()) {
    for (std::size_t i = 0; i + 2 < l.size(); ++i) {
      // Each pattern alternates families; anchor it on the matching parity.
      if (is_odd_family(r.from[0]) != (i % 2 == 0)) continue;
      if (!holds(r.where, l, i)) continue;
      LocalTerm fwd{i, r.name, r.from, r.to, std::nullopt};
      LocalTerm rev{i, r.name + "^dag", r.to, r.from, std::nullopt};
      if (r.carries_gate) {
        const auto& g = m.circuit().gate(m.gate_index_at(i));
        fwd.unitary = g.matrix();
        rev.unitary = Matrix(g.matrix().adjoint());
      }
      terms.push_back(std::move(fwd));
      terms.push_back(std::move(rev));
    }
  }
  return terms;
}

/// "t<TAB>TUR | Q PLUS Q BUL | ..." with '|' at block boundaries.
inline std::string dump_line(std::size_t t, const Config& c) {
  std::string out = std::to_string(t) + '\t';
  for (std::size_t i = 0; i < c.sites.size(); ++i) {
    if (i) out += ' ';
    out += glyph(c.sites[i]);
    if (c.lattice.boundary_after(i)) out += " |";
  }
  return out;
}

inline void dump(std::ostream& os, const HistoryTrace<Config>& h) {
  for (std::size_t t = 0; t < h.configs.size(); ++t) os << dump_line(t, h.configs[t]) << '\n';
}

/// Inverse of dump_line(); the lattice is recovered from the '|' markers.
inline std::pair<std::size_t, Config> parse_line(const std::string& line) {
  const auto tab = line.find('\t');
  if (tab == std::string::npos) throw ParseError("trace line lacks a step index", 0);
  std::size_t t = 0;
  try {
    t = std::stoul(line.substr(0, tab));
  } catch (const std::exception&) {
    throw ParseError("bad step index '" + line.substr(0, tab) + "'", 0);
  }
  std::istringstream in(line.substr(tab + 1));
  std::vector<Symbol> sites;
  std::vector<std::size_t> bars;
  std::string tok;
  while (in >> tok) {
    if (tok == "|") {
      bars.push_back(sites.size());
      continue;
    }
    auto s = symbol_from_glyph(tok);
    if (!s) throw ParseError("unknown glyph '" + tok + "'", 0);
    sites.push_back(*s);
  }
  const std::size_t rounds = bars.size();
  if (rounds == 0 || sites.size() < 1 || (sites.size() - 1) % (2 * rounds) != 0)
    throw ParseError("site count and block markers do not describe a lattice", 0);
  const int n = static_cast<int>((sites.size() - 1) / (2 * rounds));
  try {
    Lattice l(n, static_cast<int>(rounds));
    for (std::size_t b = 0; b < bars.size(); ++b)
      if (bars[b] != 1 + b * l.block_width()) throw ParseError("block marker out of place", 0);
    return {t, Config(l, std::move(sites))};
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(e.what(), 0);
  }
}

}  // namespace hqc1d::ham5
