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
#include <string>
#include <utility>
#include <vector>

#include "hqc1d/errors.hpp"
#include "hqc1d/gates.hpp"
#include "hqc1d/state.hpp"

namespace hqc1d {

struct GateApplication {
  Gate gate;
  std::vector<int> targets;  // 1-based
};

/// An operator product written left to right, as in G1 G2 ... Gk: the
/// rightmost factor acts first. Use applications() for time order.
class GateSequence {
 public:
  GateSequence() = default;
  explicit GateSequence(int qubits) : qubits_(qubits) {}

  int qubits() const noexcept { return qubits_; }
  std::size_t size() const noexcept { return factors_.size(); }
  bool empty() const noexcept { return factors_.empty(); }
  const std::vector<GateApplication>& factors() const noexcept { return factors_; }

  /// Appends a factor on the right, i.e. one that acts before all others.
  GateSequence& times(const Gate& g, std::vector<int> targets, int power = 1) {
    if (static_cast<int>(targets.size()) != g.arity())
      throw InvalidTarget("gate '" + g.label() + "' needs " + std::to_string(g.arity()) + " targets");
    for (std::size_t i = 0; i < targets.size(); ++i) {
      if (targets[i] < 1 || targets[i] > qubits_)
        throw InvalidTarget("target " + std::to_string(targets[i]) + " outside 1.." + std::to_string(qubits_));
      for (std::size_t j = 0; j < i; ++j)
        if (targets[i] == targets[j]) throw InvalidTarget("repeated target");
    }
    for (int p = 0; p < power; ++p) factors_.push_back({g, targets});
    return *this;
  }

  /// Factors in the order they act on a state.
  std::vector<GateApplication> applications() const {
    return {factors_.rbegin(), factors_.rend()};
  }

 private:
  int qubits_ = 0;
  std::vector<GateApplication> factors_;
};

/// Dense matrix of the whole product on `seq.qubits()` qubits.
inline Matrix sequence_matrix(const GateSequence& seq) {
  const Eigen::Index dim = Eigen::Index{1} << seq.qubits();
  Matrix out(dim, dim);
  const auto apps = seq.applications();
  for (Eigen::Index col = 0; col < dim; ++col) {
    QubitState s = QubitState::basis(seq.qubits(), static_cast<std::size_t>(col));
    for (const auto& a : apps) s = apply_gate(s, a.gate, a.targets);
    out.col(col) = s.amps;
  }
  return out;
}

/// Max-abs deviation between the product of `seq` and `target`.
inline double check_identity(const GateSequence& seq, const Matrix& target) {
  const Eigen::Index dim = Eigen::Index{1} << seq.qubits();
  if (target.rows() != dim || target.cols() != dim)
    throw DimensionMismatch("sequence acts on " + std::to_string(seq.qubits()) +
                            " qubits but the target has dimension " + std::to_string(target.rows()));
  return max_abs(sequence_matrix(seq) - target);
}

inline double check_identity(const GateSequence& seq, const Gate& target) {
  return check_identity(seq, target.matrix());
}

/// Names accepted by synth(), in a stable order.
inline const std::vector<std::string>& identity_names() {
  static const std::vector<std::string> names = {"Z", "Hy", "H", "X", "CX", "Y", "L2Y_TH", "L2Y_W"};
  return names;
}

/// The product that realises a named gate from the W/S toolkit.
///
///   Z      W^4 S W^4 S W^4 on (1,2)          = I (x) Z
///   Hy     W(1,2) with qubit 1 held at |1>   (2 qubits; compare on the |1> block)
///   H      Hy(1) Z(1)
///   X      H Z H
///   CX     W^2 S W^6 S W^2 S W^6 on (1,2)
///   Y      X Z
///   L2Y_TH T(1,2,3) H(3) T(1,2,3) H(3)
///   L2Y_W  X(1) X(2) Y(3) W(1,3)^3 CX(1,2) W(2,3)^3 CX(1,2) W(2,3)^3 X(2) X(1)
inline GateSequence synth(const std::string& name) {
  using namespace gates;
  if (name == "Z") {
    GateSequence s(2);
    s.times(W(), {1, 2}, 4).times(S(), {1, 2}).times(W(), {1, 2}, 4).times(S(), {1, 2}).times(W(), {1, 2}, 4);
    return s;
  }
  if (name == "Hy") {
    GateSequence s(2);
    s.times(W(), {1, 2});
    return s;
  }
  if (name == "H") {
    GateSequence s(1);
    s.times(Hy(), {1}).times(Z(), {1});
    return s;
  }
  if (name == "X") {
    GateSequence s(1);
    s.times(H(), {1}).times(Z(), {1}).times(H(), {1});
    return s;
  }
  if (name == "CX") {
    GateSequence s(2);
    s.times(W(), {1, 2}, 2).times(S(), {1, 2}).times(W(), {1, 2}, 6).times(S(), {1, 2});
    s.times(W(), {1, 2}, 2).times(S(), {1, 2}).times(W(), {1, 2}, 6);
    return s;
  }
  if (name == "Y") {
    GateSequence s(1);
    s.times(X(), {1}).times(Z(), {1});
    return s;
  }
  if (name == "L2Y_TH") {
    GateSequence s(3);
    s.times(Toffoli(), {1, 2, 3}).times(H(), {3}).times(Toffoli(), {1, 2, 3}).times(H(), {3});
    return s;
  }
  if (name == "L2Y_W") {
    GateSequence s(3);
    s.times(X(), {1}).times(X(), {2}).times(Y(), {3});
    s.times(W(), {1, 3}, 3).times(CX(), {1, 2}).times(W(), {2, 3}, 3);
    s.times(CX(), {1, 2}).times(W(), {2, 3}, 3).times(X(), {2}).times(X(), {1});
    return s;
  }
  throw LookupError("unknown identity '" + name + "'");
}

/// The matrix each named product is expected to equal.
inline Matrix identity_target(const std::string& name) {
  using namespace gates;
  if (name == "Z") return Z().promoted(false).matrix();
  if (name == "Hy") {
    // W restricted to control |1>: block-diag(I, Hy).
    Matrix m = Matrix::Identity(4, 4);
    m.block(2, 2, 2, 2) = Hy().matrix();
    return m;
  }
  if (name == "H") return H().matrix();
  if (name == "X") return X().matrix();
  if (name == "CX") return CX().matrix();
  if (name == "Y") return Y().matrix();
  if (name == "L2Y_TH" || name == "L2Y_W") return CCY().matrix();
  throw LookupError("unknown identity '" + name + "'");
}

}  // namespace hqc1d
