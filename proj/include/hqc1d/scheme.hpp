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
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "hqc1d/circuit.hpp"
#include "hqc1d/errors.hpp"
#include "hqc1d/ham5.hpp"
#include "hqc1d/ham8.hpp"
#include "hqc1d/history.hpp"

namespace hqc1d {

enum class Scheme { Ham5, Ham8 };

inline std::string_view scheme_name(Scheme s) { return s == Scheme::Ham5 ? "ham5" : "ham8"; }

inline Scheme parse_scheme(std::string_view name) {
  if (name == "ham5") return Scheme::Ham5;
  if (name == "ham8") return Scheme::Ham8;
  throw InvalidArgument("unknown scheme '" + std::string(name) + "'");
}

/// The history of either machine behind one interface.
class History {
 public:
  using Trace5 = HistoryTrace<ham5::Config>;
  using Trace8 = HistoryTrace<ham8::Config>;

  explicit History(Trace5 t) : trace_(std::move(t)) {}
  explicit History(Trace8 t) : trace_(std::move(t)) {}

  Scheme scheme() const noexcept { return trace_.index() == 0 ? Scheme::Ham5 : Scheme::Ham8; }
  const Trace5& ham5() const { return std::get<Trace5>(trace_); }
  const Trace8& ham8() const { return std::get<Trace8>(trace_); }

  std::size_t transitions() const {
    return std::visit([](const auto& t) { return t.transitions(); }, trace_);
  }
  const std::vector<GateEvent>& events() const {
    return std::visit([](const auto& t) -> const std::vector<GateEvent>& { return t.events; }, trace_);
  }
  std::vector<QubitState> states(const QubitState& initial) const {
    return std::visit([&](const auto& t) { return t.states(initial); }, trace_);
  }

  std::string dump() const {
    std::ostringstream os;
    if (scheme() == Scheme::Ham5)
      ham5::dump(os, ham5());
    else
      ham8::dump(os, ham8());
    return os.str();
  }

  /// History index of the first configuration in which every gate with
  /// circuit index below `gates` has fired, or 0 when there are none.
  std::size_t completion_index(std::size_t gates) const {
    std::size_t g = 0;
    for (const auto& e : events())
      if (e.gate_index && *e.gate_index < gates) g = e.step + 1;
    return g;
  }

 private:
  std::variant<Trace5, Trace8> trace_;
};

inline History build_history(Scheme scheme, const Circuit& circuit, ham8::Boundary boundary = ham8::Boundary::Open) {
  if (scheme == Scheme::Ham5) return History(enumerate_history(ham5::Machine(circuit)));
  return History(enumerate_history(ham8::Machine(circuit, boundary)));
}

inline std::size_t transition_count(Scheme scheme, int n, int rounds) {
  return scheme == Scheme::Ham5 ? ham5::transition_count(n, rounds) : ham8::transition_count(n, rounds);
}

struct PaddingPlan {
  int rounds_real = 0;
  int rounds_total = 0;
  std::size_t transitions = 0;  // T of the padded machine
  std::size_t completion = 0;   // history index once the last real gate has fired
};

/// History index right after gate `gate_index` fires, found by walking the
/// machine forward without storing the history. Gate events arrive in
/// circuit order, so this is also the completion index for gates 0..gate_index.
template <class Machine>
std::size_t step_after_gate(const Machine& m, std::size_t gate_index) {
  auto c = m.initial();
  std::size_t t = 0;
  while (auto s = m.forward(c)) {
    ++t;
    if (s->event && s->event->gate_index == gate_index) return t;
    c = std::move(s->next);
  }
  throw RuleEngineError("gate " + std::to_string(gate_index) + " never fires");
}

inline std::size_t completion_step(Scheme scheme, int n, int rounds, std::size_t gates) {
  if (gates == 0) return 0;
  if (scheme == Scheme::Ham5) return step_after_gate(ham5::Machine(n, rounds), gates - 1);
  return step_after_gate(ham8::Machine(Circuit(n, rounds)), gates - 1);
}

/// Smallest R_total >= R_real such that the last real gate fires by T/q,
/// i.e. completion * q <= T. Gate timing depends only on the layout, so an
/// all-identity circuit of the same shape serves as the timing oracle. The
/// condition is monotone in R_total, so the search gallops and then bisects.
inline PaddingPlan padding_plan(int n, int rounds_real, int q, Scheme scheme, int max_rounds = 4096) {
  if (q < 2) throw InvalidArgument("q must be at least 2, got " + std::to_string(q));
  const auto real_gates = static_cast<std::size_t>(rounds_real) * static_cast<std::size_t>(n - 1);
  auto plan = [&](int r) {
    return PaddingPlan{rounds_real, r, transition_count(scheme, n, r), completion_step(scheme, n, r, real_gates)};
  };
  auto ok = [&](const PaddingPlan& p) { return p.completion * static_cast<std::size_t>(q) <= p.transitions; };

  PaddingPlan best = plan(rounds_real);
  if (ok(best)) return best;
  int bad = rounds_real, step = 1;
  for (;;) {
    const int r = std::min(rounds_real + step, max_rounds);
    best = plan(r);
    if (ok(best)) break;
    if (r == max_rounds)
      throw InvalidArgument("no padding up to " + std::to_string(max_rounds) + " rounds satisfies q = " +
                            std::to_string(q));
    bad = r;
    step *= 2;
  }
  while (best.rounds_total - bad > 1) {
    const PaddingPlan mid = plan(bad + (best.rounds_total - bad) / 2);
    if (ok(mid))
      best = mid;
    else
      bad = mid.rounds_total;
  }
  return best;
}

}  // namespace hqc1d
