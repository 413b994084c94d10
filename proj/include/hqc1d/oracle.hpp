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

#include <cstdint>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hqc1d/ham5.hpp"
#include "hqc1d/ham8.hpp"
#include "hqc1d/history.hpp"
#include "hqc1d/scheme.hpp"

/// Applies local Hamiltonian terms to history states held as a classical
/// pattern times a qubit register, without building the full state vector.
namespace hqc1d::oracle {

template <class Config>
struct DressedState {
  Config pattern;
  QubitState qubits;
};

template <class Config>
struct Weighted {
  double weight;
  DressedState<Config> state;
};

/// Register after applying `u` to (k, k+1), or `s` unchanged without one.
inline QubitState act(const QubitState& s, const std::optional<Matrix>& u, std::vector<int> qubits) {
  if (!u || qubits.empty()) return s;
  return apply_gate(s, Gate("term", *u), qubits);
}

/// Sum of HAM5 terms applied to one dressed state.
inline std::vector<Weighted<ham5::Config>> apply_H(const std::vector<ham5::LocalTerm>& terms,
                                                   const DressedState<ham5::Config>& s) {
  std::vector<Weighted<ham5::Config>> out;
  const auto& sites = s.pattern.sites;
  for (const auto& term : terms) {
    if (term.site + 2 >= sites.size()) throw InvalidArgument("term window leaves the lattice");
    if (sites[term.site] != term.from[0] || sites[term.site + 1] != term.from[1] || sites[term.site + 2] != term.from[2])
      continue;
    ham5::Config next = s.pattern;
    for (std::size_t k = 0; k < 3; ++k) next.sites[term.site + k] = term.to[k];
    const int left = s.pattern.placeholders_before(term.site) + 1;
    out.push_back({term.coefficient, {std::move(next), act(s.qubits, term.unitary, {left, left + 1})}});
  }
  return out;
}

/// Projects qubit k of `s` onto |bit>.
inline QubitState project(const QubitState& s, int k, int bit) {
  QubitState out = s;
  for (std::size_t i = 0; i < s.dim(); ++i)
    if (static_cast<int>((i >> (s.n - k)) & 1U) != bit) out.amps(static_cast<Eigen::Index>(i)) = 0.0;
  return out;
}

/// Sum of HAM8 term templates tiled over every anchor. A data condition on a
/// qubit placeholder acts as a projector on that qubit.
inline std::vector<Weighted<ham8::Config>> apply_H(const std::vector<ham8::LocalTerm>& terms,
                                                   const DressedState<ham8::Config>& s) {
  std::vector<Weighted<ham8::Config>> out;
  const auto& c = s.pattern;
  for (const auto& term : terms) {
    const auto& t = term.forward;
    const bool fwd = !term.reverse;
    for (std::size_t j = 0; j < c.size(); ++j) {
      const auto at = ham8::detail::match_pattern(t, c, j, fwd);
      if (!at) continue;
      QubitState q = s.qubits;
      bool vanishes = false;
      const std::size_t cells[2] = {at->c0, at->c1};
      for (int w = 0; w < 2; ++w) {
        const auto cond = t.data[static_cast<std::size_t>(w)];
        if (cond == ham8::DataCond::Any) continue;
        const int bit = cond == ham8::DataCond::One ? 1 : 0;
        const ham8::Data d = c.data[cells[w]];
        if (ham8::is_placeholder(d))
          q = project(q, ham8::qubit_of(d), bit);
        else
          vanishes = vanishes || d != bit;
      }
      if (vanishes) continue;
      ham8::Config next = c;
      ham8::detail::rewrite(t, next, *at, fwd);
      if (t.unitary) {
        const Matrix u = fwd ? *t.unitary : Matrix(t.unitary->adjoint());
        const GateEvent e = ham8::effective_event(term.name(), u, c.data[at->c0], c.data[at->c1]);
        q = e.apply(q);
      }
      out.push_back({term.coefficient, {std::move(next), std::move(q)}});
    }
  }
  return out;
}

struct Line {
  std::size_t t = 0;
  bool pass = true;
  std::string detail;
};

struct SubspaceReport {
  std::string scheme;
  std::size_t states = 0;
  std::vector<Line> lines;

  bool passed() const {
    for (const auto& l : lines)
      if (!l.pass) return false;
    return true;
  }

  std::optional<std::size_t> first_failure() const {
    for (const auto& l : lines)
      if (!l.pass) return l.t;
    return std::nullopt;
  }

  std::string text() const {
    std::ostringstream os;
    for (const auto& l : lines) {
      os << "t=" << l.t << ' ' << (l.pass ? "PASS" : "FAIL");
      if (!l.detail.empty()) os << ' ' << l.detail;
      os << '\n';
    }
    os << scheme << ": " << (passed() ? "PASS" : "FAIL") << " over " << states << " history states\n";
    return os.str();
  }
};

/// Random normalized register; the closure check must hold for every input.
inline QubitState random_state(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  QubitState s = QubitState::zeros(n);
  for (Eigen::Index i = 0; i < s.amps.size(); ++i) s.amps(i) = Complex(g(rng), g(rng));
  s.amps /= s.amps.norm();
  return s;
}

inline constexpr double kClosureTolerance = 1e-12;

namespace detail {

template <class Config, class Terms, class DumpFn>
SubspaceReport certify(const std::string& name, const HistoryTrace<Config>& h, const Terms& terms,
                       const QubitState& initial, DumpFn dump) {
  SubspaceReport report{name, h.size(), {}};
  const auto regs = h.states(initial);
  for (std::size_t t = 0; t < h.size(); ++t) {
    Line line{t, true, ""};
    try {
      // Sum outputs per pattern, then compare with -|t-1> - |t+1>.
      std::map<std::string, std::pair<Config, Vector>> acc;
      for (auto& w : apply_H(terms, DressedState<Config>{h.configs[t], regs[t]})) {
        auto key = w.state.pattern.key();
        auto it = acc.find(key);
        if (it == acc.end())
          acc.emplace(key, std::make_pair(w.state.pattern, Vector(w.weight * w.state.qubits.amps)));
        else
          it->second.second += w.weight * w.state.qubits.amps;
      }
      std::map<std::string, std::size_t> expected;
      if (t > 0) expected.emplace(h.configs[t - 1].key(), t - 1);
      if (t + 1 < h.size()) expected.emplace(h.configs[t + 1].key(), t + 1);
      for (const auto& [key, entry] : acc) {
        auto e = expected.find(key);
        if (e == expected.end()) {
          if (entry.second.cwiseAbs().maxCoeff() > kClosureTolerance) {
            line.pass = false;
            line.detail = "unexpected pattern " + dump(entry.first);
            break;
          }
          continue;
        }
        const double dev = max_abs(entry.second + regs[e->second].amps);
        if (dev > kClosureTolerance) {
          line.pass = false;
          line.detail = "register for t=" + std::to_string(e->second) + " off by " + std::to_string(dev);
          break;
        }
      }
      if (line.pass)
        for (const auto& [key, s] : expected)
          if (!acc.count(key)) {
            line.pass = false;
            line.detail = "missing transition to t=" + std::to_string(s);
            break;
          }
    } catch (const Error& e) {
      line.pass = false;
      line.detail = e.what();
    }
    report.lines.push_back(std::move(line));
  }
  return report;
}

}  // namespace detail

inline SubspaceReport certify_subspace(const ham5::Machine& m, const std::vector<ham5::LocalTerm>& terms,
                                       const QubitState& initial) {
  return detail::certify("ham5", enumerate_history(m), terms, initial,
                         [](const ham5::Config& c) { return ham5::dump_line(0, c).substr(2); });
}

inline SubspaceReport certify_subspace(const ham8::Machine& m, const std::vector<ham8::LocalTerm>& terms,
                                       const QubitState& initial) {
  return detail::certify("ham8", enumerate_history(m), terms, initial, [](const ham8::Config& c) {
    std::ostringstream os;
    ham8::dump_step(os, 0, c);
    std::string s = os.str();
    for (auto& ch : s)
      if (ch == '\n') ch = ';';
    return s;
  });
}

/// Deliberately broken term lists for exercising the checker: HAM5 loses
/// the terms of rule 3, HAM8 those of rule 1b.
inline std::vector<ham5::LocalTerm> inject_fault(std::vector<ham5::LocalTerm> terms) {
  std::erase_if(terms, [](const ham5::LocalTerm& t) { return t.rule == "3" || t.rule == "3^dag"; });
  return terms;
}

inline std::vector<ham8::LocalTerm> inject_fault(std::vector<ham8::LocalTerm> terms) {
  std::erase_if(terms, [](const ham8::LocalTerm& t) { return t.forward.rule == "1b"; });
  return terms;
}

/// Full certification of a circuit under either scheme with the pristine
/// (or fault-injected) term list and a seeded random register.
inline SubspaceReport certify_subspace(Scheme scheme, const Circuit& circuit, bool fault = false,
                                       std::uint64_t seed = 1) {
  const QubitState init = random_state(circuit.n(), seed);
  if (scheme == Scheme::Ham5) {
    const ham5::Machine m(circuit);
    auto terms = ham5::local_terms(m);
    return certify_subspace(m, fault ? inject_fault(std::move(terms)) : terms, init);
  }
  const ham8::Machine m(circuit);
  auto terms = ham8::local_terms(m);
  return certify_subspace(m, fault ? inject_fault(std::move(terms)) : terms, init);
}

}  // namespace hqc1d::oracle
