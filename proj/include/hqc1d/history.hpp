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

#include <concepts>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hqc1d/errors.hpp"
#include "hqc1d/gates.hpp"
#include "hqc1d/state.hpp"

namespace hqc1d {

/// Effect of one transition on the logical register. `qubits` lists the
/// logical qubits touched (1-based, 0 to 2 entries, left qubit first) and
/// `action` is the unitary on exactly those qubits.
struct GateEvent {
  std::size_t step = 0;  // transition step -> step+1
  std::string label;
  Matrix action;
  std::vector<int> qubits;
  // Position in round-major circuit order when the event acts on a
  // neighbouring pair of logical qubits; empty for scaffold-only firings.
  std::optional<std::size_t> gate_index;
  bool adjoint = false;

  bool is_logical() const noexcept { return !qubits.empty(); }

  QubitState apply(const QubitState& s) const {
    if (qubits.empty()) return s;
    return apply_gate(s, Gate(label, action), qubits);
  }
};

/// One rewrite: the successor (or predecessor) configuration, the rule that
/// produced it, and a gate event when the rule carries one.
template <class Config>
struct Step {
  Config next;
  std::string rule;
  std::optional<GateEvent> event;
};

/// A deterministic reversible rewrite system with unique forward and
/// backward moves on its legal configurations.
template <class M>
concept RewriteMachine = requires(const M& m, const typename M::Config& c) {
  { m.initial() } -> std::convertible_to<typename M::Config>;
  { m.forward(c) } -> std::same_as<std::optional<Step<typename M::Config>>>;
  { m.backward(c) } -> std::same_as<std::optional<Step<typename M::Config>>>;
  { c.key() } -> std::convertible_to<std::string>;
};

/// All configurations from the initial one to the final one, with the rule
/// that fired at each step and the gate events in firing order.
template <class Config>
struct HistoryTrace {
  std::vector<Config> configs;
  std::vector<std::string> rules;  // rules[t] fired on configs[t]
  std::vector<GateEvent> events;

  std::size_t transitions() const noexcept { return configs.empty() ? 0 : configs.size() - 1; }
  std::size_t size() const noexcept { return configs.size(); }

  /// Index of `c` in the history; throws NotAHistoryState otherwise.
  std::size_t index_of(const Config& c) const {
    const std::string key = c.key();
    if (index_.size() != configs.size()) {
      for (std::size_t t = 0; t < configs.size(); ++t)
        if (configs[t].key() == key) return t;
    } else if (auto it = index_.find(key); it != index_.end()) {
      return it->second;
    }
    throw NotAHistoryState("configuration is not in the history");
  }

  /// Rebuilds the key index used by index_of(); call after editing configs.
  void reindex() {
    index_.clear();
    for (std::size_t t = 0; t < configs.size(); ++t) index_.emplace(configs[t].key(), t);
  }

  /// Logical register after the first `t` transitions.
  QubitState state_at(std::size_t t, const QubitState& initial) const {
    QubitState s = initial;
    for (const auto& e : events) {
      if (e.step >= t) break;
      s = e.apply(s);
    }
    return s;
  }

  /// Registers for every history index, sharing work across t.
  std::vector<QubitState> states(const QubitState& initial) const {
    std::vector<QubitState> out;
    out.reserve(configs.size());
    QubitState s = initial;
    std::size_t next_event = 0;
    for (std::size_t t = 0; t < configs.size(); ++t) {
      while (next_event < events.size() && events[next_event].step < t) s = events[next_event++].apply(s);
      out.push_back(s);
    }
    return out;
  }

 private:
  std::map<std::string, std::size_t> index_;
};

/// Runs the forward rule from the initial configuration until no rule
/// applies. `max_steps` guards against non-terminating rule tables.
template <RewriteMachine M>
HistoryTrace<typename M::Config> enumerate_history(const M& machine, std::size_t max_steps = 10'000'000) {
  HistoryTrace<typename M::Config> h;
  h.configs.push_back(machine.initial());
  while (auto step = machine.forward(h.configs.back())) {
    const std::size_t t = h.configs.size() - 1;
    if (t >= max_steps) throw RuleEngineError("history exceeds " + std::to_string(max_steps) + " steps");
    h.rules.push_back(step->rule);
    if (step->event) {
      step->event->step = t;
      h.events.push_back(std::move(*step->event));
    }
    h.configs.push_back(std::move(step->next));
  }
  h.reindex();
  return h;
}

}  // namespace hqc1d
