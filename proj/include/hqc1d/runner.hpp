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
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hqc1d/circuit.hpp"
#include "hqc1d/scheme.hpp"
#include "hqc1d/walk.hpp"

/// Measurement protocol: pad the circuit, let the walk run for a random
/// time, read the history index, and keep the shot when it lies beyond T/q.
namespace hqc1d::runner {

struct RunPlan {
  Circuit circuit;
  Scheme scheme = Scheme::Ham5;
  int q = 6;
  std::optional<double> tau0 = std::nullopt;  // defaults to walk::default_tau0(T)
  std::size_t shots = 1000;
  std::uint64_t seed = 0;
  std::string input = {};  // initial bit string, all zeros when empty
};

struct ShotRecord {
  double tau = 0.0;
  std::size_t t = 0;
  bool accepted = false;
  std::optional<std::size_t> readout;  // basis index, accepted shots only
};

struct RunReport {
  std::string scheme;
  int n = 0;
  int q = 0;
  int rounds_real = 0;
  int rounds_total = 0;
  std::size_t transitions = 0;
  std::size_t threshold = 0;
  std::size_t completion = 0;
  double tau0 = 0.0;
  std::uint64_t seed = 0;
  std::string input;
  std::vector<ShotRecord> shots;
  std::map<std::string, std::size_t> histogram;  // accepted readouts

  std::size_t accepted() const {
    std::size_t a = 0;
    for (const auto& s : shots) a += s.accepted;
    return a;
  }
  double acceptance_rate() const { return shots.empty() ? 0.0 : static_cast<double>(accepted()) / shots.size(); }
};

inline constexpr const char* kGenerator = "mt19937_64 seeded by seed_seq{seed, shot}";

/// Uniform double in [0, 1) from the top 53 bits of one draw.
inline double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// Index drawn from a discrete distribution given by non-negative weights.
inline std::size_t sample_index(const Eigen::VectorXd& weights, double u) {
  const double total = weights.sum();
  double acc = 0.0;
  for (Eigen::Index i = 0; i < weights.size(); ++i) {
    acc += weights(i) / total;
    if (u < acc) return static_cast<std::size_t>(i);
  }
  // Rounding left u above the last partial sum: take the last nonzero entry.
  for (Eigen::Index i = weights.size() - 1; i >= 0; --i)
    if (weights(i) > 0.0) return static_cast<std::size_t>(i);
  return 0;
}

inline std::mt19937_64 shot_rng(std::uint64_t seed, std::size_t shot) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(shot), static_cast<std::uint32_t>(static_cast<std::uint64_t>(shot) >> 32)};
  return std::mt19937_64(seq);
}

inline RunReport run(const RunPlan& plan) {
  if (plan.shots < 1) throw InvalidArgument("shots must be at least 1");
  if (plan.q < 2) throw InvalidArgument("q must be at least 2");
  if (plan.tau0 && !(*plan.tau0 > 0.0)) throw InvalidArgument("tau0 must be positive");
  const Circuit& c = plan.circuit;
  if (plan.scheme == Scheme::Ham8) ham8::program_layout(c);  // rejects gates outside {I, S, W}

  const QubitState init = plan.input.empty() ? QubitState::zeros(c.n()) : QubitState::from_bits(plan.input);
  if (init.n != c.n())
    throw DimensionMismatch("input has " + std::to_string(init.n) + " bits, circuit has " + std::to_string(c.n()) +
                            " qubits");

  const PaddingPlan pad = padding_plan(c.n(), c.rounds(), plan.q, plan.scheme);
  const History history = build_history(plan.scheme, c.padded(pad.rounds_total));
  const int T = static_cast<int>(history.transitions());
  const auto registers = history.states(init);
  const walk::PathSpectrum spectrum(T);

  RunReport rep;
  rep.scheme = std::string(scheme_name(plan.scheme));
  rep.n = c.n();
  rep.q = plan.q;
  rep.rounds_real = c.rounds();
  rep.rounds_total = pad.rounds_total;
  rep.transitions = history.transitions();
  rep.threshold = static_cast<std::size_t>(walk::threshold(T, plan.q));
  rep.completion = history.completion_index(c.gate_count());
  rep.tau0 = plan.tau0.value_or(walk::default_tau0(T));
  rep.seed = plan.seed;
  rep.input = plan.input.empty() ? bits_of(0, c.n()) : plan.input;

  rep.shots.reserve(plan.shots);
  for (std::size_t k = 0; k < plan.shots; ++k) {
    auto rng = shot_rng(plan.seed, k);
    ShotRecord s;
    s.tau = uniform01(rng) * rep.tau0;
    s.t = sample_index(walk::evolve(spectrum, s.tau).probabilities(), uniform01(rng));
    s.accepted = s.t > rep.threshold;
    if (s.accepted) {
      if (s.t < rep.completion)
        throw RuleEngineError("accepted shot at t=" + std::to_string(s.t) + " precedes the last real gate");
      s.readout = sample_index(registers[s.t].amps.cwiseAbs2(), uniform01(rng));
      ++rep.histogram[bits_of(*s.readout, c.n())];
    }
    rep.shots.push_back(s);
  }
  return rep;
}

/// History index of a measured configuration.
template <class Config>
std::size_t infer_step(const HistoryTrace<Config>& h, const Config& measured) {
  return h.index_of(measured);
}

inline std::string serialize(const RunReport& r) {
  std::ostringstream os;
  os << "scheme " << r.scheme << '\n'
     << "qubits " << r.n << '\n'
     << "rounds " << r.rounds_real << '\n'
     << "padded_rounds " << r.rounds_total << '\n'
     << "transitions " << r.transitions << '\n'
     << "q " << r.q << '\n'
     << "threshold " << r.threshold << '\n'
     << "completion " << r.completion << '\n'
     << "tau0 " << walk::format_double(r.tau0) << '\n'
     << "input " << r.input << '\n'
     << "seed " << r.seed << '\n'
     << "generator " << kGenerator << '\n'
     << "shots " << r.shots.size() << '\n'
     << "accepted " << r.accepted() << '\n'
     << "acceptance_rate " << walk::format_double(r.acceptance_rate()) << '\n'
     << "# shot tau t accepted readout\n";
  for (std::size_t k = 0; k < r.shots.size(); ++k) {
    const auto& s = r.shots[k];
    os << k << ' ' << walk::format_double(s.tau) << ' ' << s.t << ' ' << (s.accepted ? 1 : 0) << ' '
       << (s.readout ? bits_of(*s.readout, r.n) : "-") << '\n';
  }
  os << "# histogram\n";
  for (const auto& [bits, count] : r.histogram) os << bits << ' ' << count << '\n';
  return os.str();
}

}  // namespace hqc1d::runner
