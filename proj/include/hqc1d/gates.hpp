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

#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <utility>

#include <Eigen/Dense>

#include "hqc1d/errors.hpp"

namespace hqc1d {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr double kUnitarityTolerance = 1e-9;
inline constexpr double kIdentityTolerance = 1e-12;

/// Largest absolute entry of a complex matrix (0 for empty matrices).
inline double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

/// A named unitary on 1, 2 or 3 qubits. Basis ordering is big-endian in the
/// target tuple: for targets (a, b) the row index is 2*bit(a) + bit(b), so the
/// first target is the control of every controlled gate defined here.
class Gate {
 public:
  Gate() = default;

  Gate(std::string label, Matrix matrix) : label_(std::move(label)), matrix_(std::move(matrix)) {
    const auto dim = matrix_.rows();
    if (dim != matrix_.cols()) throw DimensionMismatch("gate '" + label_ + "' matrix is not square");
    int arity = 0;
    while ((Eigen::Index{1} << arity) < dim) ++arity;
    if ((Eigen::Index{1} << arity) != dim || arity < 1 || arity > 3)
      throw DimensionMismatch("gate '" + label_ + "' has dimension " + std::to_string(dim) +
                              ", expected 2, 4 or 8");
    arity_ = arity;
    const double dev =
        max_abs(matrix_.adjoint() * matrix_ - Matrix::Identity(dim, dim));
    if (dev > kUnitarityTolerance)
      throw InvalidArgument("gate '" + label_ + "' is not unitary (deviation " +
                            std::to_string(dev) + ")");
  }

  const std::string& label() const noexcept { return label_; }
  int arity() const noexcept { return arity_; }
  Eigen::Index dim() const noexcept { return matrix_.rows(); }
  const Matrix& matrix() const noexcept { return matrix_; }

  Gate adjoint() const { return Gate(label_ + "^dag", matrix_.adjoint()); }

  /// One-qubit gates promoted onto a neighbouring pair: G (x) I when the gate
  /// sits on the left qubit, I (x) G otherwise. Two-qubit gates pass through.
  Gate promoted(bool on_left = true) const {
    if (arity_ == 2) return *this;
    if (arity_ != 1) throw InvalidTarget("cannot promote a " + std::to_string(arity_) +
                                         "-qubit gate to a pair");
    const Matrix id = Matrix::Identity(2, 2);
    Matrix out(4, 4);
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) {
        const int hi_r = r >> 1, lo_r = r & 1, hi_c = c >> 1, lo_c = c & 1;
        out(r, c) = on_left ? matrix_(hi_r, hi_c) * id(lo_r, lo_c)
                            : id(hi_r, hi_c) * matrix_(lo_r, lo_c);
      }
    return Gate(on_left ? label_ + "(x)I" : "I(x)" + label_, out);
  }

  bool is_identity(double tol = kIdentityTolerance) const {
    return max_abs(matrix_ - Matrix::Identity(dim(), dim())) <= tol;
  }

 private:
  std::string label_;
  Matrix matrix_;
  int arity_ = 0;
};

namespace gates {

namespace detail {
inline Matrix from_real(std::initializer_list<std::initializer_list<double>> rows) {
  const auto n = static_cast<Eigen::Index>(rows.size());
  Matrix m(n, n);
  Eigen::Index r = 0;
  for (const auto& row : rows) {
    Eigen::Index c = 0;
    for (double v : row) m(r, c++) = v;
    ++r;
  }
  return m;
}
inline const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

// |11..1><11..1| block replaced by `tail` (2x2), identity elsewhere.
inline Matrix doubly_controlled(const Matrix& tail) {
  Matrix m = Matrix::Identity(8, 8);
  m.block(6, 6, 2, 2) = tail;
  return m;
}
}  // namespace detail

inline Gate I1() { return Gate("I", Matrix::Identity(2, 2)); }
inline Gate I2() { return Gate("I", Matrix::Identity(4, 4)); }

inline Gate S() {
  return Gate("S", detail::from_real({{1, 0, 0, 0}, {0, 0, 1, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}}));
}

/// Controlled 45-degree rotation; the control is the left qubit.
inline Gate W() {
  const double h = detail::kInvSqrt2;
  return Gate("W", detail::from_real({{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, h, -h}, {0, 0, h, h}}));
}

inline Gate Hy() {
  const double h = detail::kInvSqrt2;
  return Gate("Hy", detail::from_real({{h, -h}, {h, h}}));
}

inline Gate Z() { return Gate("Z", detail::from_real({{1, 0}, {0, -1}})); }

inline Gate H() {
  const double h = detail::kInvSqrt2;
  return Gate("H", detail::from_real({{h, h}, {h, -h}}));
}

inline Gate X() { return Gate("X", detail::from_real({{0, 1}, {1, 0}})); }

/// Real form of Pauli Y (i times the usual one): X*Z.
inline Gate Y() { return Gate("Y", detail::from_real({{0, -1}, {1, 0}})); }
inline Gate Yinv() { return Gate("Yinv", detail::from_real({{0, 1}, {-1, 0}})); }

inline Gate CX() {
  return Gate("CX", detail::from_real({{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}}));
}

/// Controlled phase diag(1, 1, 1, i). Kept for reference; no identity uses it.
inline Gate CPhaseI() {
  Matrix m = Matrix::Identity(4, 4);
  m(3, 3) = Complex(0.0, 1.0);
  return Gate("CP(i)", m);
}

inline Gate Toffoli() { return Gate("T", detail::doubly_controlled(X().matrix())); }
inline Gate CCY() { return Gate("CCY", detail::doubly_controlled(Y().matrix())); }

/// Gate constants by the names used in circuit files.
inline Gate by_name(const std::string& name) {
  if (name == "I") return I1();
  if (name == "W") return W();
  if (name == "S") return S();
  if (name == "H") return H();
  if (name == "X") return X();
  if (name == "Z") return Z();
  if (name == "Y") return Y();
  if (name == "CX") return CX();
  if (name == "T") return Toffoli();
  if (name == "Hy") return Hy();
  throw LookupError("unknown gate name '" + name + "'");
}

}  // namespace gates
}  // namespace hqc1d
