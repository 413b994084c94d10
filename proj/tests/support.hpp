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

#include <complex>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hqc1d/hqc1d.hpp"

namespace hqc1d::testing {

inline std::string source_path(const std::string& rel) { return std::string(HQC1D_SOURCE_DIR) + "/" + rel; }

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  std::vector<std::string> out;
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

/// Three qubits, two rounds: W(1,2) S(2,3), then S(1,2) W(2,3).
inline Circuit worked_circuit() {
  Circuit c(3, 2);
  c.set(1, 1, gates::W());
  c.set(1, 2, gates::S());
  c.set(2, 1, gates::S());
  c.set(2, 2, gates::W());
  return c;
}

inline Circuit w_pair() {
  Circuit c(2, 1);
  c.set(1, 1, gates::W());
  return c;
}

inline QubitState random_state(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  QubitState s = QubitState::zeros(n);
  for (Eigen::Index i = 0; i < s.amps.size(); ++i) s.amps(i) = Complex(g(rng), g(rng));
  s.amps /= s.amps.norm();
  return s;
}

/// Random circuit over the given gate pool.
inline Circuit random_circuit(int n, int rounds, const std::vector<Gate>& pool, std::mt19937_64& rng) {
  Circuit c(n, rounds);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  for (int r = 1; r <= rounds; ++r)
    for (int i = 1; i < n; ++i) c.set(r, i, pool[pick(rng)]);
  return c;
}

/// Dense Kronecker-product matrix of a slot gate on n qubits: an oracle
/// independent of apply_gate's index arithmetic.
inline Matrix embed_pair(const Matrix& u, int n, int left) {
  Matrix out = Matrix::Identity(1, 1);
  for (int q = 1; q <= n;) {
    Matrix f;
    if (q == left) {
      f = u;
      q += 2;
    } else {
      f = Matrix::Identity(2, 2);
      q += 1;
    }
    Matrix k(out.rows() * f.rows(), out.cols() * f.cols());
    for (Eigen::Index a = 0; a < out.rows(); ++a)
      for (Eigen::Index b = 0; b < out.cols(); ++b) k.block(a * f.rows(), b * f.cols(), f.rows(), f.cols()) = out(a, b) * f;
    out = k;
  }
  return out;
}

inline Matrix circuit_matrix(const Circuit& c) {
  const Eigen::Index dim = Eigen::Index{1} << c.n();
  Matrix m = Matrix::Identity(dim, dim);
  for (std::size_t k = 0; k < c.gate_count(); ++k) m = embed_pair(c.gate(k).matrix(), c.n(), c.position_of(k)) * m;
  return m;
}

/// Classical RK4 on i dc/dt = H c with H the path hopping matrix (-1 off
/// the diagonal), using step doubling: the result is accepted only when a
/// run at half the step agrees to `tol`, and the finer run is returned.
inline Vector rk4_path(int T, double tau, double tol = 1e-10) {
  const Eigen::Index N = T + 1;
  auto deriv = [&](const Vector& c) {
    Vector d(N);
    for (Eigen::Index t = 0; t < N; ++t) {
      Complex h = 0.0;
      if (t > 0) h -= c(t - 1);
      if (t + 1 < N) h -= c(t + 1);
      d(t) = Complex(0.0, -1.0) * h;
    }
    return d;
  };
  auto integrate = [&](long steps) {
    Vector c = Vector::Zero(N);
    c(0) = 1.0;
    const double h = tau / static_cast<double>(steps);
    for (long s = 0; s < steps; ++s) {
      const Vector k1 = deriv(c);
      const Vector k2 = deriv(c + 0.5 * h * k1);
      const Vector k3 = deriv(c + 0.5 * h * k2);
      const Vector k4 = deriv(c + h * k3);
      c += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return c;
  };
  if (tau == 0.0) {
    Vector c = Vector::Zero(N);
    c(0) = 1.0;
    return c;
  }
  long steps = std::max<long>(16, static_cast<long>(std::ceil(std::abs(tau) / 0.02)));
  Vector coarse = integrate(steps);
  for (int attempt = 0; attempt < 8; ++attempt) {
    Vector fine = integrate(2 * steps);
    if ((fine - coarse).cwiseAbs().maxCoeff() < tol) return fine;
    coarse = std::move(fine);
    steps *= 2;
  }
  throw std::runtime_error("RK4 step doubling did not converge");
}

/// Composite Simpson rule for f on [a, b] with `panels` (even) subintervals.
template <class F>
double simpson(F f, double a, double b, long panels) {
  if (panels % 2) ++panels;
  const double h = (b - a) / static_cast<double>(panels);
  double s = f(a) + f(b);
  for (long i = 1; i < panels; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + h * static_cast<double>(i));
  return s * h / 3.0;
}

}  // namespace hqc1d::testing
