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

/// Eight-level, three-site, translation-invariant machine.
///
/// Column j holds cell j (a program symbol and a data bit) and the cursor
/// site sitting between cells j and j+1. Data positions that carry logical
/// qubits hold a placeholder w_k; the scaffold bits are classical and fixed.
namespace hqc1d::ham8 {

enum class Cursor : std::uint8_t { Gat, Mov, MovL, MovLe, Dblr, Arr, Tur, Star, X };
enum class Program : std::uint8_t { I, S, W, Bul };

inline std::string_view glyph(Cursor c) {
  switch (c) {
    case Cursor::Gat: return "GAT";
    case Cursor::Mov: return "MOV";
    case Cursor::MovL: return "MOVL";
    case Cursor::MovLe: return "MOVLE";
    case Cursor::Dblr: return "DBLR";
    case Cursor::Arr: return "ARR";
    case Cursor::Tur: return "TUR";
    case Cursor::Star: return "*";
    case Cursor::X: return "X";
  }
  return "?";
}

inline std::string_view glyph(Program p) {
  switch (p) {
    case Program::I: return "I";
    case Program::S: return "S";
    case Program::W: return "W";
    case Program::Bul: return "BUL";
  }
  return "?";
}

inline bool is_gate(Program p) noexcept { return p != Program::Bul; }

inline const Gate& program_gate(Program p) {
  static const Gate i = gates::I2(), s = gates::S(), w = gates::W();
  switch (p) {
    case Program::I: return i;
    case Program::S: return s;
    case Program::W: return w;
    case Program::Bul: break;
  }
  throw InvalidArgument("BUL carries no gate");
}

/// Data value: 0 or 1 for scaffold bits, -k for the placeholder of qubit k.
using Data = int;
inline bool is_placeholder(Data d) noexcept { return d < 0; }
inline int qubit_of(Data d) noexcept { return -d; }

inline std::string data_glyph(Data d) { return d < 0 ? "w" + std::to_string(-d) : std::to_string(d); }

enum class Boundary : std::uint8_t { Open, PeriodicX };

struct Config {
  std::vector<Cursor> cursor;
  std::vector<Program> program;
  std::vector<Data> data;
  Boundary boundary = Boundary::Open;

  std::size_t size() const noexcept { return cursor.size(); }

  std::string key() const {
    std::string k;
    k.reserve(2 * size() + 1);
    k.push_back(boundary == Boundary::Open ? 'o' : 'p');
    for (auto c : cursor) k.push_back(static_cast<char>('a' + static_cast<int>(c)));
    for (auto p : program) k.push_back(static_cast<char>('A' + static_cast<int>(p)));
    return k;
  }

  bool operator==(const Config&) const = default;
};

/// Program symbols and data bits for a circuit over {I, S, W}.
struct ProgramLayout {
  int n = 0;
  int rounds = 0;
  std::vector<Program> program;  // per round: I, U_{r,1..n-1}, I
  std::vector<Data> data;        // 0, [1 0^n]^(R-1), 1, w_1..w_n, [1 0^n]^(R-1), 1, 0
  std::size_t leading_spacers = 0;

  std::size_t cells() const noexcept { return data.size(); }
};

inline Program program_symbol(const Gate& g) {
  if (g.is_identity()) return Program::I;
  if (g.label() == "S") return Program::S;
  if (g.label() == "W") return Program::W;
  throw UnsupportedGate("gate '" + g.label() + "' is not in {I, S, W}; compile it first");
}

inline ProgramLayout program_layout(const Circuit& c) {
  ProgramLayout l;
  l.n = c.n();
  l.rounds = c.rounds();
  for (int r = 1; r <= c.rounds(); ++r) {
    l.program.push_back(Program::I);
    for (int i = 1; i < c.n(); ++i) l.program.push_back(program_symbol(c.at(r, i)));
    l.program.push_back(Program::I);
  }
  auto spacer = [&] {
    l.data.push_back(1);
    for (int k = 0; k < c.n(); ++k) l.data.push_back(0);
  };
  l.data.push_back(0);
  for (int r = 1; r < c.rounds(); ++r) spacer();
  l.data.push_back(1);
  for (int k = 1; k <= c.n(); ++k) l.data.push_back(-k);
  for (int r = 1; r < c.rounds(); ++r) spacer();
  l.data.push_back(1);
  l.data.push_back(0);
  l.leading_spacers = static_cast<std::size_t>(c.rounds() - 1) * static_cast<std::size_t>(c.n() + 1) + 2;
  return l;
}

inline Config initial_config(const Circuit& circuit, Boundary boundary = Boundary::Open) {
  const auto l = program_layout(circuit);
  Config c;
  c.boundary = boundary;
  c.data = l.data;
  c.program.assign(l.leading_spacers, Program::Bul);
  c.program.insert(c.program.end(), l.program.begin(), l.program.end());
  c.program.push_back(Program::Bul);
  c.cursor.assign(c.data.size(), Cursor::Star);
  c.cursor.back() = Cursor::MovL;
  if (boundary == Boundary::PeriodicX) {
    c.cursor.push_back(Cursor::X);
    c.program.push_back(Program::I);
    c.data.push_back(0);
  }
  return c;
}

inline std::size_t transition_count(int n, int rounds) {
  const auto nn = static_cast<std::size_t>(n), r = static_cast<std::size_t>(rounds);
  return 6 + (nn + 1) * (3 * r * (r - 1) * (nn + 1) + 9 * r - 5);
}

/// A: (cursor j-1, cell j, cursor j).  B: (cell j, cursor j, cell j+1).
enum class Window : std::uint8_t { A, B };
enum class DataCond : std::uint8_t { Any, Zero, One };

/// One forward rule instance in position-free form. Fields unused by the
/// window kind are ignored: A uses cursors[0..1] and programs[0], B uses
/// cursors[0] and programs[0..1]. `data` conditions the cells in the window.
struct Template {
  std::string rule;
  Window window;
  std::array<Cursor, 2> cursor_from;
  std::array<Cursor, 2> cursor_to;
  std::array<Program, 2> program_from;
  std::array<Program, 2> program_to;
  std::array<DataCond, 2> data{DataCond::Any, DataCond::Any};
  std::optional<Matrix> unitary = std::nullopt;  // on the data of the two cells of a B window
};

/// All rule templates. Gate-class rules are expanded once per program symbol.
inline std::vector<Template> templates() {
  using enum Cursor;
  using P = Program;
  using D = DataCond;
  std::vector<Template> t = {
      {"1a", Window::A, {Star, MovL}, {MovLe, Star}, {P::Bul, P::Bul}, {P::Bul, P::Bul}},
      {"1b", Window::A, {Star, MovLe}, {Tur, Star}, {P::Bul, P::Bul}, {P::Bul, P::Bul}},
  };
  for (auto g : {P::I, P::S, P::W})
    t.push_back({"1c", Window::A, {Star, MovLe}, {MovLe, Star}, {g, g}, {g, g}});
  t.push_back({"2a", Window::A, {Dblr, Star}, {Star, Gat}, {P::Bul, P::Bul}, {P::Bul, P::Bul}});
  t.push_back({"2b", Window::A, {Arr, Star}, {Star, Mov}, {P::Bul, P::Bul}, {P::Bul, P::Bul}});
  t.push_back({"3a", Window::B, {Tur, Tur}, {Dblr, Dblr}, {P::Bul, P::Bul}, {P::Bul, P::Bul}, {D::Any, D::One}});
  t.push_back({"3b", Window::B, {Tur, Tur}, {Arr, Arr}, {P::Bul, P::Bul}, {P::Bul, P::Bul}, {D::Any, D::Zero}});
  for (auto g : {P::I, P::S, P::W})
    t.push_back({"4a", Window::B, {Gat, Gat}, {Dblr, Dblr}, {P::Bul, g}, {g, P::Bul}, {D::Any, D::Any},
                 program_gate(g).matrix()});
  for (auto g : {P::I, P::S, P::W})
    t.push_back({"4b", Window::B, {Mov, Mov}, {Arr, Arr}, {P::Bul, g}, {g, P::Bul}});
  t.push_back({"5a", Window::B, {Gat, Gat}, {MovL, MovL}, {P::Bul, P::Bul}, {P::Bul, P::Bul}, {D::One, D::Any}});
  t.push_back({"5b", Window::B, {Mov, Mov}, {MovL, MovL}, {P::Bul, P::Bul}, {P::Bul, P::Bul}, {D::Zero, D::Any}});
  return t;
}

namespace detail {

/// Cell indices (c0, c1) and cursor indices (k0, k1) of a window anchored at
/// j, or nullopt when an open lattice truncates it.
struct Sites {
  std::size_t c0, c1, k0, k1;
};

inline std::optional<Sites> sites(Window w, std::size_t j, std::size_t len, Boundary b) {
  const bool wrap = b == Boundary::PeriodicX;
  if (w == Window::A) {
    if (j == 0 && !wrap) return std::nullopt;
    const std::size_t left = j == 0 ? len - 1 : j - 1;
    return Sites{j, j, left, j};
  }
  if (j + 1 == len && !wrap) return std::nullopt;
  return Sites{j, (j + 1) % len, j, j};
}

inline bool data_ok(DataCond cond, Data d, const std::string& rule, std::size_t cell) {
  if (cond == DataCond::Any) return true;
  if (is_placeholder(d))
    throw RuleEngineError("rule " + rule + " reads qubit placeholder w" + std::to_string(qubit_of(d)) +
                          " at cell " + std::to_string(cell));
  return d == (cond == DataCond::One ? 1 : 0);
}

/// Matches the cursor and program part of `t` at j, reading its `from` side
/// (forward) or its `to` side. Data conditions are left to the caller.
inline std::optional<Sites> match_pattern(const Template& t, const Config& c, std::size_t j, bool fwd) {
  const auto s = sites(t.window, j, c.size(), c.boundary);
  if (!s) return std::nullopt;
  const auto& cur = fwd ? t.cursor_from : t.cursor_to;
  const auto& prog = fwd ? t.program_from : t.program_to;
  if (t.window == Window::A) {
    if (c.cursor[s->k0] != cur[0] || c.program[s->c0] != prog[0] || c.cursor[s->k1] != cur[1]) return std::nullopt;
  } else {
    if (c.program[s->c0] != prog[0] || c.cursor[s->k0] != cur[0] || c.program[s->c1] != prog[1]) return std::nullopt;
  }
  return s;
}

/// Full match; reading a placeholder in a data condition is an error.
inline std::optional<Sites> match(const Template& t, const Config& c, std::size_t j, bool fwd) {
  const auto s = match_pattern(t, c, j, fwd);
  if (!s) return std::nullopt;
  if (!data_ok(t.data[0], c.data[s->c0], t.rule, s->c0)) return std::nullopt;
  if (!data_ok(t.data[1], c.data[s->c1], t.rule, s->c1)) return std::nullopt;
  return s;
}

inline void rewrite(const Template& t, Config& c, const Sites& s, bool fwd) {
  const auto& cur = fwd ? t.cursor_to : t.cursor_from;
  const auto& prog = fwd ? t.program_to : t.program_from;
  if (t.window == Window::A) {
    c.cursor[s.k0] = cur[0];
    c.cursor[s.k1] = cur[1];
    c.program[s.c0] = prog[0];
  } else {
    c.program[s.c0] = prog[0];
    c.cursor[s.k0] = cur[0];
    c.program[s.c1] = prog[1];
  }
}

}  // namespace detail

/// Logical effect of a two-cell gate `u` on data (d0, d1). Scaffold bits
/// must come out unchanged; the remaining action lands on the placeholders.
inline GateEvent effective_event(const std::string& label, const Matrix& u, Data d0, Data d1) {
  constexpr double tol = kIdentityTolerance;
  GateEvent e;
  e.label = label;
  const bool q0 = is_placeholder(d0), q1 = is_placeholder(d1);
  if (q0 && q1) {
    e.action = u;
    e.qubits = {qubit_of(d0), qubit_of(d1)};
    return e;
  }
  auto fail = [&] {
    throw RuleEngineError("gate " + label + " on data (" + data_glyph(d0) + ", " + data_glyph(d1) +
                          ") would change a scaffold bit");
  };
  if (!q0 && !q1) {
    const Eigen::Index b = 2 * d0 + d1;
    for (Eigen::Index r = 0; r < 4; ++r)
      if (std::abs(u(r, b) - (r == b ? Complex(1.0) : Complex(0.0))) > tol) fail();
    e.action = Matrix::Identity(1, 1);
    return e;
  }
  // One scaffold bit s and one placeholder: keep the block with fixed s.
  const int s = q0 ? d1 : d0;
  auto index = [&](int fixed, int free) -> Eigen::Index { return q0 ? 2 * free + fixed : 2 * fixed + free; };
  Matrix a(2, 2);
  for (int r = 0; r < 2; ++r)
    for (int col = 0; col < 2; ++col) {
      a(r, col) = u(index(s, r), index(s, col));
      if (std::abs(u(index(1 - s, r), index(s, col))) > tol) fail();
    }
  e.action = a;
  e.qubits = {qubit_of(q0 ? d0 : d1)};
  return e;
}

class Machine {
 public:
  using Config = ham8::Config;

  explicit Machine(Circuit circuit, Boundary boundary = Boundary::Open)
      : circuit_(std::move(circuit)), boundary_(boundary), templates_(templates()) {
    program_layout(circuit_);  // validates the gate set
  }

  /// Machine driven by a caller-supplied template table (fault injection).
  Machine(Circuit circuit, Boundary boundary, std::vector<Template> table)
      : circuit_(std::move(circuit)), boundary_(boundary), templates_(std::move(table)) {
    program_layout(circuit_);
  }

  const Circuit& circuit() const noexcept { return circuit_; }
  Boundary boundary() const noexcept { return boundary_; }
  const std::vector<Template>& table() const noexcept { return templates_; }

  Config initial() const { return initial_config(circuit_, boundary_); }

  std::optional<Step<Config>> forward(const Config& c) const { return move(c, true); }
  std::optional<Step<Config>> backward(const Config& c) const { return move(c, false); }

 private:
  std::optional<Step<Config>> move(const Config& c, bool fwd) const {
    const Template* hit = nullptr;
    detail::Sites at{};
    std::size_t anchor = 0;
    // A window at j reads cursors j-1 and j only, so a template that needs a
    // non-STAR cursor can only match next to one.
    const std::size_t len = c.size();
    std::vector<bool> near_active(len, false);
    for (std::size_t k = 0; k < len; ++k)
      if (c.cursor[k] != Cursor::Star) {
        near_active[k] = true;
        near_active[(k + 1) % len] = true;
      }
    for (std::size_t j = 0; j < len; ++j)
      for (const auto& t : templates_) {
        if (!near_active[j] && needs_active(t, fwd)) continue;
        const auto s = detail::match(t, c, j, fwd);
        if (!s) continue;
        if (hit)
          throw RuleEngineError(std::string(fwd ? "forward" : "backward") + " rules " + hit->rule + "@" +
                                std::to_string(anchor) + " and " + t.rule + "@" + std::to_string(j) +
                                " both match");
        hit = &t;
        at = *s;
        anchor = j;
      }
    if (!hit) return std::nullopt;

    Step<Config> step{c, fwd ? hit->rule : hit->rule + "^dag", std::nullopt};
    detail::rewrite(*hit, step.next, at, fwd);
    if (hit->unitary) {
      const Program g = fwd ? hit->program_from[1] : hit->program_to[0];
      const std::string label = std::string(glyph(g)) + (fwd ? "" : "^dag");
      GateEvent e = effective_event(label, fwd ? *hit->unitary : Matrix(hit->unitary->adjoint()),
                                    c.data[at.c0], c.data[at.c1]);
      e.adjoint = !fwd;
      if (e.qubits.size() == 2) e.gate_index = gate_index_of(c, fwd ? at.c1 : at.c0, e.qubits[0]);
      step.event = std::move(e);
    }
    return step;
  }

  static bool needs_active(const Template& t, bool fwd) {
    const auto& cur = fwd ? t.cursor_from : t.cursor_to;
    return cur[0] != Cursor::Star || (t.window == Window::A && cur[1] != Cursor::Star);
  }

  /// Circuit position of the program cell at `cell`, when it is a real gate
  /// acting on its scheduled pair. Program symbols never overtake each other,
  /// so the cell's rank among non-BUL cells identifies the program entry.
  std::optional<std::size_t> gate_index_of(const Config& c, std::size_t cell, int left_qubit) const {
    std::size_t rank = 0;
    for (std::size_t j = 0; j < cell; ++j) rank += is_gate(c.program[j]);
    const auto per_round = static_cast<std::size_t>(circuit_.n() + 1);
    const std::size_t round = rank / per_round, pos = rank % per_round;
    if (pos == 0 || pos + 1 == per_round || static_cast<int>(pos) != left_qubit) return std::nullopt;
    return round * static_cast<std::size_t>(circuit_.n() - 1) + pos - 1;
  }

  Circuit circuit_;
  Boundary boundary_;
  std::vector<Template> templates_;
};

inline HistoryTrace<Config> enumerate(const Machine& m) { return enumerate_history(m); }

/// Hamiltonian terms: each template contributes -(|to><from| + h.c.), tiled
/// over every anchor the boundary admits. The reverse is listed explicitly.
struct LocalTerm {
  Template forward;
  bool reverse = false;
  double coefficient = -1.0;

  std::string name() const { return forward.rule + (reverse ? "^dag" : ""); }
};

inline std::vector<LocalTerm> local_terms(const Machine& m) {
  std::vector<LocalTerm> out;
  for (const auto& t : m.table()) {
    out.push_back({t, false});
    out.push_back({t, true});
  }
  return out;
}

inline void dump_step(std::ostream& os, std::size_t t, const Config& c) {
  os << "step " << t << "\n  cursor ";
  for (auto x : c.cursor) os << ' ' << glyph(x);
  os << "\n  program";
  for (auto p : c.program) os << ' ' << glyph(p);
  os << "\n  data   ";
  for (auto d : c.data) os << ' ' << data_glyph(d);
  os << '\n';
}

inline void dump(std::ostream& os, const HistoryTrace<Config>& h) {
  for (std::size_t t = 0; t < h.configs.size(); ++t) dump_step(os, t, h.configs[t]);
}

/// Reads every "step t" block of a dump. Boundary is PeriodicX when the last
/// cursor is X.
inline std::vector<std::pair<std::size_t, Config>> parse_dump(std::istream& in) {
  std::vector<std::pair<std::size_t, Config>> out;
  std::string line;
  int line_no = 0;
  auto row = [&](std::string_view name) {
    if (!std::getline(in, line)) throw ParseError("trace ends inside a step block", line_no + 1);
    ++line_no;
    std::istringstream ls(line);
    std::string head;
    ls >> head;
    if (head != name) throw ParseError("expected the " + std::string(name) + " row", line_no);
    std::vector<std::string> toks;
    for (std::string tok; ls >> tok;) toks.push_back(tok);
    return toks;
  };
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word)) continue;
    std::size_t t = 0;
    if (word != "step" || !(ls >> t)) throw ParseError("expected 'step <t>'", line_no);
    Config c;
    for (const auto& tok : row("cursor")) {
      bool ok = false;
      for (auto x : {Cursor::Gat, Cursor::Mov, Cursor::MovL, Cursor::MovLe, Cursor::Dblr, Cursor::Arr, Cursor::Tur,
                     Cursor::Star, Cursor::X})
        if (glyph(x) == tok) {
          c.cursor.push_back(x);
          ok = true;
        }
      if (!ok) throw ParseError("unknown cursor glyph '" + tok + "'", line_no);
    }
    for (const auto& tok : row("program")) {
      bool ok = false;
      for (auto p : {Program::I, Program::S, Program::W, Program::Bul})
        if (glyph(p) == tok) {
          c.program.push_back(p);
          ok = true;
        }
      if (!ok) throw ParseError("unknown program glyph '" + tok + "'", line_no);
    }
    for (const auto& tok : row("data")) {
      if (tok == "0" || tok == "1")
        c.data.push_back(tok[0] - '0');
      else if (tok.size() > 1 && tok[0] == 'w' && tok.find_first_not_of("0123456789", 1) == std::string::npos)
        c.data.push_back(-std::stoi(tok.substr(1)));
      else
        throw ParseError("unknown data glyph '" + tok + "'", line_no);
    }
    if (c.cursor.size() != c.program.size() || c.cursor.size() != c.data.size())
      throw ParseError("rows of step " + std::to_string(t) + " differ in length", line_no);
    if (!c.cursor.empty() && c.cursor.back() == Cursor::X) c.boundary = Boundary::PeriodicX;
    out.emplace_back(t, std::move(c));
  }
  return out;
}

}  // namespace hqc1d::ham8
