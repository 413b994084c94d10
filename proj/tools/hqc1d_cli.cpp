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

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hqc1d/hqc1d.hpp"

namespace {

using namespace hqc1d;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;

struct Options {
  std::string circuit;
  std::string scheme = "ham5";
  std::string boundary = "open";
  std::string out;
  std::string input;
  std::string scope = "all";
  std::string taus = "0,1,10,100";
  int T = 0;
  int q = 6;
  double tau0 = 0.0;
  std::size_t shots = 1000;
  std::uint64_t seed = 0;
  bool average = false;
  bool compile = false;
  bool inject_fault = false;
};

/// Writes to --out when given, stdout otherwise.
void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw InvalidArgument("cannot write '" + o.out + "'");
  f << text;
}

Circuit load(const Options& o, Scheme scheme) {
  if (o.circuit.empty()) throw InvalidArgument("--circuit is required");
  Circuit c = load_circuit(o.circuit);
  if (o.compile && scheme == Scheme::Ham8) c = compile_for_ham8(c);
  return c;
}

ham8::Boundary parse_boundary(const std::string& b) {
  if (b == "open") return ham8::Boundary::Open;
  if (b == "periodic") return ham8::Boundary::PeriodicX;
  throw InvalidArgument("unknown boundary '" + b + "'");
}

int cmd_trace(const Options& o) {
  const Scheme scheme = parse_scheme(o.scheme);
  const History h = build_history(scheme, load(o, scheme), parse_boundary(o.boundary));
  emit(o, h.dump());
  return kExitOk;
}

std::vector<double> parse_taus(const std::string& text) {
  std::vector<double> taus;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size() || !(v >= 0.0)) throw InvalidArgument("bad tau grid entry '" + item + "'");
    taus.push_back(v);
  }
  if (taus.empty()) throw InvalidArgument("empty tau grid");
  return taus;
}

int cmd_evolve(const Options& o) {
  int T = o.T;
  if (!o.circuit.empty()) {
    const Scheme scheme = parse_scheme(o.scheme);
    T = static_cast<int>(build_history(scheme, load(o, scheme)).transitions());
  }
  if (T < 1) throw InvalidArgument("give --T >= 1 or a --circuit");
  const walk::PathSpectrum spectrum(T);
  std::ostringstream os;
  if (o.average)
    walk::write_average_csv(os, spectrum, o.tau0 > 0.0 ? o.tau0 : walk::default_tau0(T));
  else
    walk::write_evolve_csv(os, spectrum, parse_taus(o.taus));
  emit(o, os.str());
  return kExitOk;
}

int cmd_sample(const Options& o) {
  const Scheme scheme = parse_scheme(o.scheme);
  runner::RunPlan plan{load(o, scheme), scheme, o.q, std::nullopt, o.shots, o.seed, o.input};
  if (o.tau0 > 0.0) plan.tau0 = o.tau0;
  emit(o, runner::serialize(runner::run(plan)));
  return kExitOk;
}

bool verify_identities(std::ostream& os) {
  bool ok = true;
  for (const auto& name : identity_names()) {
    const double dev = check_identity(synth(name), identity_target(name));
    const bool pass = dev <= kIdentityTolerance;
    ok = ok && pass;
    os << "identity " << name << ' ' << (pass ? "PASS" : "FAIL") << " deviation " << dev << '\n';
  }
  Matrix w8 = Matrix::Identity(4, 4);
  for (int k = 0; k < 8; ++k) w8 = gates::W().matrix() * w8;
  const double dev = max_abs(w8 - Matrix::Identity(4, 4));
  ok = ok && dev <= kIdentityTolerance;
  os << "identity W^8=I " << (dev <= kIdentityTolerance ? "PASS" : "FAIL") << " deviation " << dev << '\n';
  return ok;
}

bool verify_subspace(std::ostream& os, bool fault) {
  Circuit c5(3, 2);
  c5.set(1, 1, gates::W());
  c5.set(1, 2, gates::S());
  c5.set(2, 1, gates::S());
  c5.set(2, 2, gates::W());
  Circuit c8(2, 1);
  c8.set(1, 1, gates::W());
  bool ok = true;
  for (auto [scheme, circuit] : {std::pair{Scheme::Ham5, c5}, std::pair{Scheme::Ham8, c8}}) {
    const auto report = oracle::certify_subspace(scheme, circuit, fault);
    ok = ok && report.passed();
    os << report.text();
  }
  return ok;
}

bool verify_formulas(std::ostream& os) {
  bool ok = true;
  for (auto scheme : {Scheme::Ham5, Scheme::Ham8})
    for (int n = 2; n <= 5; ++n)
      for (int r = 1; r <= 4; ++r) {
        const auto engine = build_history(scheme, Circuit(n, r)).transitions();
        const auto formula = transition_count(scheme, n, r);
        ok = ok && engine == formula;
        os << "formula " << scheme_name(scheme) << " n=" << n << " R=" << r << " engine " << engine << " closed form "
           << formula << ' ' << (engine == formula ? "PASS" : "FAIL") << '\n';
      }
  return ok;
}

int cmd_verify(const Options& o) {
  std::ostringstream os;
  bool ok = true;
  const bool all = o.scope == "all";
  if (!all && o.scope != "identities" && o.scope != "subspace" && o.scope != "formulas")
    throw InvalidArgument("unknown scope '" + o.scope + "'");
  if (all || o.scope == "identities") ok = verify_identities(os) && ok;
  if (all || o.scope == "subspace") ok = verify_subspace(os, o.inject_fault) && ok;
  if (all || o.scope == "formulas") ok = verify_formulas(os) && ok;
  os << "verify " << o.scope << ' ' << (ok ? "PASS" : "FAIL") << '\n';
  emit(o, os.str());
  return ok ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hamiltonian quantum computer simulator"};
  app.require_subcommand(1);
  Options o;

  auto add_scheme = [&](CLI::App* sub) {
    sub->add_option("--scheme", o.scheme, "ham5 or ham8")->check(CLI::IsMember({"ham5", "ham8"}));
    sub->add_flag("--compile", o.compile, "rewrite CX and Z into W/S before building ham8");
  };

  auto* trace = app.add_subcommand("trace", "dump the full history of a circuit");
  trace->add_option("--circuit", o.circuit, "circuit file")->required();
  add_scheme(trace);
  trace->add_option("--boundary", o.boundary, "open or periodic (ham8)")->check(CLI::IsMember({"open", "periodic"}));
  trace->add_option("--out", o.out, "output path");

  auto* evolve = app.add_subcommand("evolve", "walk probabilities as CSV");
  evolve->add_option("--T", o.T, "history length T");
  evolve->add_option("--circuit", o.circuit, "take T from this circuit's history");
  add_scheme(evolve);
  evolve->add_option("--taus", o.taus, "comma-separated times");
  evolve->add_flag("--average", o.average, "emit the time-averaged distribution instead");
  evolve->add_option("--tau0", o.tau0, "averaging horizon");
  evolve->add_option("--out", o.out, "output path");

  auto* sample = app.add_subcommand("sample", "run the measurement protocol");
  sample->add_option("--circuit", o.circuit, "circuit file")->required();
  add_scheme(sample);
  sample->add_option("--q", o.q, "accept history indices beyond T/q")->check(CLI::Range(2, 1 << 20));
  sample->add_option("--tau0", o.tau0, "horizon for the random measurement time");
  sample->add_option("--shots", o.shots, "number of shots")->check(CLI::PositiveNumber);
  sample->add_option("--seed", o.seed, "seed")->required();
  sample->add_option("--input", o.input, "initial bit string");
  sample->add_option("--out", o.out, "output path");

  auto* verify = app.add_subcommand("verify", "run the built-in checks");
  verify->add_option("--scope", o.scope, "identities, subspace, formulas or all")
      ->check(CLI::IsMember({"identities", "subspace", "formulas", "all"}));
  verify->add_flag("--inject-fault", o.inject_fault, "drop one rule's terms before the subspace check");
  verify->add_option("--out", o.out, "output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (trace->parsed()) return cmd_trace(o);
    if (evolve->parsed()) return cmd_evolve(o);
    if (sample->parsed()) return cmd_sample(o);
    if (verify->parsed()) return cmd_verify(o);
  } catch (const hqc1d::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
