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

#include <string>
#include <vector>

#include "hqc1d/circuit.hpp"
#include "hqc1d/identities.hpp"

namespace hqc1d {

/// Time-ordered {W, S} gates on a pair realising a slot gate, or an empty
/// list for identities. Only gates with an ancilla-free W/S product are
/// handled: CX, and Z on either qubit of the pair.
inline std::vector<Gate> ws_expansion(const Gate& g) {
  if (g.is_identity()) return {};
  if (g.label() == "W" || g.label() == "S") return {g};
  std::vector<Gate> out;
  auto append = [&](const GateSequence& seq) {
    for (const auto& a : seq.applications()) out.push_back(a.gate);
  };
  if (g.label() == "CX") {
    append(synth("CX"));
  } else if (g.label() == "I(x)Z") {
    append(synth("Z"));
  } else if (g.label() == "Z(x)I") {
    // Z on the left qubit: swap, Z on the right, swap back.
    out.push_back(gates::S());
    append(synth("Z"));
    out.push_back(gates::S());
  } else {
    throw UnsupportedGate("gate '" + g.label() + "' has no ancilla-free W/S expansion (supported: I, W, S, CX, Z)");
  }
  return out;
}

/// Rewrites a circuit over {I, W, S, CX, Z} into one over {I, W, S}.
/// Rounds made only of native gates are kept; any other round becomes one
/// round per expanded gate, each holding a single gate in its slot.
inline Circuit compile_for_ham8(const Circuit& c) {
  std::vector<std::vector<Gate>> rounds;  // each entry: n-1 slot gates
  const Gate id = gates::I2();
  for (int r = 1; r <= c.rounds(); ++r) {
    bool native = true;
    for (int i = 1; i < c.n(); ++i) {
      const auto& g = c.at(r, i);
      native = native && (g.is_identity() || g.label() == "W" || g.label() == "S");
    }
    if (native) {
      std::vector<Gate> row;
      for (int i = 1; i < c.n(); ++i) row.push_back(c.at(r, i));
      rounds.push_back(std::move(row));
      continue;
    }
    for (int i = 1; i < c.n(); ++i)
      for (const auto& g : ws_expansion(c.at(r, i))) {
        std::vector<Gate> row(static_cast<std::size_t>(c.n() - 1), id);
        row[static_cast<std::size_t>(i - 1)] = g;
        rounds.push_back(std::move(row));
      }
  }
  if (rounds.empty()) return Circuit(c.n(), 1);
  Circuit out(c.n(), static_cast<int>(rounds.size()));
  for (std::size_t r = 0; r < rounds.size(); ++r)
    for (std::size_t i = 0; i < rounds[r].size(); ++i)
      out.set(static_cast<int>(r) + 1, static_cast<int>(i) + 1, rounds[r][i]);
  return out;
}

}  // namespace hqc1d
