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

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hqc1d/errors.hpp"
#include "hqc1d/gates.hpp"

namespace hqc1d {

/// Logical register of n qubits. Qubit 1 is the most significant bit of the
/// amplitude index, so "10" on two qubits is index 2.
struct QubitState {
  int n = 0;
  Vector amps;

  static QubitState zeros(int n) { return basis(n, 0); }

  static QubitState basis(int n, std::size_t index) {
    if (n < 1 || n > 30) throw InvalidArgument("qubit count " + std::to_string(n) + " out of range");
    QubitState s{n, Vector::Zero(Eigen::Index{1} << n)};
    if (index >= static_cast<std::size_t>(s.amps.size()))
      throw InvalidArgument("basis index out of range");
    s.amps(static_cast<Eigen::Index>(index)) = 1.0;
    return s;
  }

  /// Parses a bit string such as "10"; the leftmost character is qubit 1.
  static QubitState from_bits(std::string_view bits) {
    std::size_t index = 0;
    for (char c : bits) {
      if (c != '0' && c != '1') throw InvalidArgument("bad bit string '" + std::string(bits) + "'");
      index = (index << 1) | static_cast<std::size_t>(c - '0');
    }
    return basis(static_cast<int>(bits.size()), index);
  }

  double norm() const { return amps.norm(); }
  std::size_t dim() const { return static_cast<std::size_t>(amps.size()); }
};

/// Bit-string label of a basis index, qubit 1 first.
inline std::string bits_of(std::size_t index, int n) {
  std::string out(static_cast<std::size_t>(n), '0');
  for (int q = 0; q < n; ++q)
    if ((index >> (n - 1 - q)) & 1U) out[static_cast<std::size_t>(q)] = '1';
  return out;
}

/// Applies `gate` to the qubits in `targets` (1-based, first target = most
/// significant bit of the gate's basis index).
inline QubitState apply_gate(const QubitState& state, const Gate& gate, std::span<const int> targets) {
  const int k = static_cast<int>(targets.size());
  if (k != gate.arity())
    throw InvalidTarget("gate '" + gate.label() + "' has arity " + std::to_string(gate.arity()) +
                        " but " + std::to_string(k) + " targets were given");
  for (int i = 0; i < k; ++i) {
    if (targets[i] < 1 || targets[i] > state.n)
      throw InvalidTarget("target " + std::to_string(targets[i]) + " outside 1.." + std::to_string(state.n));
    for (int j = 0; j < i; ++j)
      if (targets[i] == targets[j]) throw InvalidTarget("repeated target " + std::to_string(targets[i]));
  }

  std::vector<std::size_t> shift(static_cast<std::size_t>(k));
  std::size_t mask = 0;
  for (int i = 0; i < k; ++i) {
    shift[static_cast<std::size_t>(i)] = static_cast<std::size_t>(state.n - targets[i]);
    mask |= std::size_t{1} << shift[static_cast<std::size_t>(i)];
  }
  const std::size_t sub_dim = std::size_t{1} << k;
  const auto& m = gate.matrix();

  QubitState out{state.n, Vector::Zero(state.amps.size())};
  std::vector<std::size_t> full(sub_dim);
  for (std::size_t base = 0; base < state.dim(); ++base) {
    if (base & mask) continue;
    for (std::size_t sub = 0; sub < sub_dim; ++sub) {
      std::size_t idx = base;
      for (int i = 0; i < k; ++i)
        if ((sub >> (k - 1 - i)) & 1U) idx |= std::size_t{1} << shift[static_cast<std::size_t>(i)];
      full[sub] = idx;
    }
    for (std::size_t r = 0; r < sub_dim; ++r) {
      Complex acc = 0.0;
      for (std::size_t c = 0; c < sub_dim; ++c)
        acc += m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) *
               state.amps(static_cast<Eigen::Index>(full[c]));
      out.amps(static_cast<Eigen::Index>(full[r])) = acc;
    }
  }
  return out;
}

inline QubitState apply_gate(const QubitState& state, const Gate& gate, std::initializer_list<int> targets) {
  return apply_gate(state, gate, std::span<const int>(targets.begin(), targets.size()));
}

}  // namespace hqc1d
