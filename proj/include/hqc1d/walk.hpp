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
#include <cstdio>
#include <limits>
#include <memory>
#include <numbers>
#include <ostream>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <fftw3.h>

#include "hqc1d/errors.hpp"
#include "hqc1d/gates.hpp"

/// Continuous-time walk on the history line: T+1 sites with hopping -1
/// between neighbours, started at site 0.
namespace hqc1d::walk {

/// Eigensystem of the path graph: lambda_k = -2 cos(k pi / (T+2)),
/// v_k(t) = sqrt(2/(T+2)) sin(k pi (t+1) / (T+2)), k = 1..T+1.
struct PathSpectrum {
  int T = 0;
  Eigen::VectorXd lambda;  // lambda(k-1)

  explicit PathSpectrum(int T_) : T(T_) {
    if (T < 1) throw InvalidArgument("walk needs T >= 1, got " + std::to_string(T));
    lambda.resize(T + 1);
    for (Eigen::Index k = 0; k <= T; ++k)
      lambda(k) = -2.0 * std::cos(static_cast<double>(k + 1) * std::numbers::pi / (T + 2.0));
  }

  /// v_{k+1}(t), computed on demand.
  double v(Eigen::Index k, Eigen::Index t) const {
    const double denom = T + 2.0;
    return std::sqrt(2.0 / denom) * std::sin(static_cast<double>((k + 1) * (t + 1)) * std::numbers::pi / denom);
  }

  /// Dense matrix with v(k, t) in row k, column t. Memory grows as T^2.
  Eigen::MatrixXd eigenvectors() const {
    Eigen::MatrixXd m(sites(), sites());
    for (Eigen::Index k = 0; k < sites(); ++k)
      for (Eigen::Index t = 0; t < sites(); ++t) m(k, t) = v(k, t);
    return m;
  }

  Eigen::Index sites() const noexcept { return T + 1; }

  /// Type-I discrete sine transform of length T+1:
  /// out(m) = 2 sum_k in(k) sin((k+1)(m+1) pi / (T+2)).
  void dst(const double* in, double* out) const {
    if (!plan_) {
      std::vector<double> a(static_cast<std::size_t>(sites())), b(a.size());
      plan_ = std::shared_ptr<fftw_plan_s>(
          fftw_plan_r2r_1d(static_cast<int>(sites()), a.data(), b.data(), FFTW_RODFT00, FFTW_ESTIMATE | FFTW_UNALIGNED),
          fftw_destroy_plan);
    }
    fftw_execute_r2r(plan_.get(), const_cast<double*>(in), out);
  }

 private:
  mutable std::shared_ptr<fftw_plan_s> plan_;
};

struct WalkAmplitudes {
  double tau = 0.0;
  Vector amps;

  Eigen::VectorXd probabilities() const { return amps.cwiseAbs2(); }
};

/// c_m(tau) = sum_k exp(-i lambda_k tau) v_k(m) v_k(0), evaluated as a sine
/// transform of the phased weights.
inline WalkAmplitudes evolve(const PathSpectrum& s, double tau) {
  const Eigen::Index N = s.sites();
  Eigen::VectorXd re(N), im(N), out_re(N), out_im(N);
  for (Eigen::Index k = 0; k < N; ++k) {
    const double a = -s.lambda(k) * tau;
    re(k) = std::cos(a) * s.v(k, 0);
    im(k) = std::sin(a) * s.v(k, 0);
  }
  s.dst(re.data(), out_re.data());
  s.dst(im.data(), out_im.data());
  const double scale = 0.5 * std::sqrt(2.0 / (s.T + 2.0));
  Vector amps(N);
  for (Eigen::Index m = 0; m < N; ++m) amps(m) = scale * Complex(out_re(m), out_im(m));
  return {tau, amps};
}

inline WalkAmplitudes evolve(int T, double tau) { return evolve(PathSpectrum(T), tau); }

inline constexpr double kInfiniteTau = std::numeric_limits<double>::infinity();

/// (1/tau0) int_0^tau0 cos(d tau) dtau; the sine parts cancel in the
/// symmetric double sum. tau0 = infinity keeps only the diagonal.
inline double sinc_average(double d, double tau0) {
  if (std::isinf(tau0)) return d == 0.0 ? 1.0 : 0.0;
  const double x = d * tau0;
  return std::abs(x) < 1e-8 ? 1.0 - x * x / 6.0 : std::sin(x) / x;
}

/// Time-averaged occupation of every site over [0, tau0].
inline Eigen::VectorXd avg_distribution(const PathSpectrum& s, double tau0) {
  if (!(tau0 > 0.0)) throw InvalidArgument("tau0 must be positive");
  const Eigen::Index N = s.sites();
  Eigen::MatrixXd kernel(N, N);
  for (Eigen::Index k = 0; k < N; ++k)
    for (Eigen::Index l = 0; l < N; ++l)
      kernel(k, l) = k == l ? 1.0 : sinc_average(s.lambda(k) - s.lambda(l), tau0);
  // a(k, m) = v_k(m) v_k(0)
  const Eigen::MatrixXd v = s.eigenvectors();
  const Eigen::MatrixXd a = v.array().colwise() * v.col(0).array();
  return (a.array() * (kernel * a).array()).colwise().sum().transpose();
}

inline double avg_prob(const PathSpectrum& s, int m, double tau0) {
  if (m < 0 || m > s.T) throw InvalidArgument("site " + std::to_string(m) + " outside 0.." + std::to_string(s.T));
  if (!(tau0 > 0.0)) throw InvalidArgument("tau0 must be positive");
  const Eigen::Index N = s.sites();
  Eigen::VectorXd a(N);
  for (Eigen::Index k = 0; k < N; ++k) a(k) = s.v(k, m) * s.v(k, 0);
  double out = 0.0;
  for (Eigen::Index k = 0; k < N; ++k)
    for (Eigen::Index l = 0; l < N; ++l)
      out += a(k) * a(l) * (k == l ? 1.0 : sinc_average(s.lambda(k) - s.lambda(l), tau0));
  return out;
}

inline double avg_prob(int T, int m, double tau0) { return avg_prob(PathSpectrum(T), m, tau0); }

/// Last rejected history index: acceptance means m > T/q, i.e. m > floor(T/q).
inline int threshold(int T, int q) {
  if (q < 2) throw InvalidArgument("q must be at least 2, got " + std::to_string(q));
  return T / q;
}

/// Averaged probability of finding the walker beyond T/q.
inline double tail_prob(const PathSpectrum& s, int q, double tau0) {
  const auto p = avg_distribution(s, tau0);
  const int first = threshold(s.T, q) + 1;
  return first > s.T ? 0.0 : p.tail(s.T + 1 - first).sum();
}

inline double tail_prob(int T, int q, double tau0) { return tail_prob(PathSpectrum(T), q, tau0); }

/// 10 T ln(T+2): a horizon of order T log T.
inline double default_tau0(int T) { return 10.0 * T * std::log(T + 2.0); }

inline std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

/// CSV rows "tau,m,p" for every tau in the grid and every site.
inline void write_evolve_csv(std::ostream& os, const PathSpectrum& s, const std::vector<double>& taus) {
  os << "tau,m,p\n";
  for (double tau : taus) {
    const auto p = evolve(s, tau).probabilities();
    for (Eigen::Index m = 0; m < p.size(); ++m) os << format_double(tau) << ',' << m << ',' << format_double(p(m)) << '\n';
  }
}

/// CSV rows "m,avg_p".
inline void write_average_csv(std::ostream& os, const PathSpectrum& s, double tau0) {
  os << "m,avg_p\n";
  const auto p = avg_distribution(s, tau0);
  for (Eigen::Index m = 0; m < p.size(); ++m) os << m << ',' << format_double(p(m)) << '\n';
}

}  // namespace hqc1d::walk
