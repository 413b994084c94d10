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

#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <set>

#include "support.hpp"

namespace {

using namespace hqc1d;
using ham8::Cursor;
using ham8::Program;

std::vector<std::pair<std::size_t, ham8::Config>> reference() {
  std::ifstream in(hqc1d::testing::source_path("tests/golden/ham8_n3_r2_reference.txt"));
  return ham8::parse_dump(in);
}

Circuit worked_ham8() {
  // Program I W S I I S W I: round 1 = (W, S), round 2 = (S, W).
  return hqc1d::testing::worked_circuit();
}

TEST(Ham8Layout, WorkedExample) {
  const auto l = ham8::program_layout(worked_ham8());
  using P = Program;
  EXPECT_EQ(l.program, (std::vector<P>{P::I, P::W, P::S, P::I, P::I, P::S, P::W, P::I}));
  EXPECT_EQ(l.data, (std::vector<ham8::Data>{0, 1, 0, 0, 0, 1, -1, -2, -3, 1, 0, 0, 0, 1, 0}));
}

TEST(Ham8Layout, MinimalInstance) {
  const auto l = ham8::program_layout(hqc1d::testing::w_pair());
  EXPECT_EQ(l.program, (std::vector<Program>{Program::I, Program::W, Program::I}));
  EXPECT_EQ(l.data, (std::vector<ham8::Data>{0, 1, -1, -2, 1, 0}));
  const auto c = ham8::initial_config(hqc1d::testing::w_pair());
  EXPECT_EQ(c.size(), 6u);
  int non_star = 0;
  for (auto x : c.cursor) non_star += x != Cursor::Star;
  EXPECT_EQ(non_star, 1);
  EXPECT_EQ(c.cursor.back(), Cursor::MovL);
}

TEST(Ham8Layout, SpacingRuleForThreeRounds) {
  // Each round is I, two gates, I; spacers are a 1 followed by n zeros.
  const auto l = ham8::program_layout(Circuit(3, 3));
  EXPECT_EQ(l.program.size(), 12u);
  const std::vector<ham8::Data> want = {0, 1, 0, 0, 0, 1, 0, 0, 0, 1, -1, -2, -3, 1, 0, 0, 0, 1, 0, 0, 0, 1, 0};
  EXPECT_EQ(l.data, want);
  std::vector<std::size_t> ones;
  for (std::size_t i = 0; i < want.size(); ++i)
    if (want[i] == 1) ones.push_back(i);
  for (std::size_t k = 1; k < 3; ++k) EXPECT_EQ(ones[k] - ones[k - 1], 4u);
  EXPECT_EQ(l.leading_spacers, 10u);
}

TEST(Ham8Layout, RejectsGatesOutsideTheProgramAlphabet) {
  Circuit c(2, 1);
  c.set(1, 1, gates::CX());
  EXPECT_THROW(ham8::program_layout(c), UnsupportedGate);
  EXPECT_THROW(ham8::Machine{c}, UnsupportedGate);
}

TEST(Ham8Initial, MatchesReferenceStepZero) {
  EXPECT_EQ(ham8::initial_config(worked_ham8()), reference().front().second);
}

TEST(Ham8Rules, NamedSteps) {
  const ham8::Machine m(worked_ham8());
  const auto h = enumerate_history(m);
  auto s = m.forward(h.configs[0]);
  ASSERT_TRUE(s);
  EXPECT_EQ(s->rule, "1a");
  s = m.forward(h.configs[9]);
  ASSERT_TRUE(s);
  EXPECT_EQ(s->rule, "1b");
  EXPECT_FALSE(m.forward(h.configs[154]));
  EXPECT_FALSE(m.backward(h.configs[0]));
  auto b = m.backward(h.configs[1]);
  ASSERT_TRUE(b);
  EXPECT_EQ(b->next, h.configs[0]);
  b = m.backward(h.configs[13]);
  ASSERT_TRUE(b && b->event);
  EXPECT_EQ(b->next, h.configs[12]);
  EXPECT_EQ(b->rule, "4a^dag");
  EXPECT_TRUE(b->event->adjoint);
  b = m.backward(h.configs[42]);
  ASSERT_TRUE(b);
  EXPECT_EQ(b->next, h.configs[41]);
}

TEST(Ham8History, ReferenceStepsBitExact) {
  const auto h = ham8::enumerate(ham8::Machine(worked_ham8()));
  EXPECT_EQ(h.size(), 155u);
  const auto pub = reference();
  EXPECT_EQ(pub.size(), 24u);
  for (const auto& [t, c] : pub) EXPECT_EQ(h.configs.at(t), c) << "step " << t;
}

TEST(Ham8History, ClosedFormMatchesEngine) {
  for (int n = 2; n <= 4; ++n)
    for (int r = 1; r <= 3; ++r)
      EXPECT_EQ(ham8::enumerate(ham8::Machine(Circuit(n, r))).transitions(), ham8::transition_count(n, r));
  EXPECT_EQ(ham8::transition_count(3, 2), 154u);
  EXPECT_EQ(ham8::transition_count(2, 1), 18u);
  for (int n = 2; n <= 6; ++n) EXPECT_EQ(ham8::transition_count(n, 1), 6u + 4u * static_cast<std::size_t>(n + 1));
}

TEST(Ham8History, UniqueReversibleAndDistinct) {
  for (int n = 2; n <= 4; ++n)
    for (int r = 1; r <= 3; ++r) {
      const ham8::Machine m(Circuit(n, r));
      const auto h = enumerate_history(m);
      std::set<std::string> keys;
      for (std::size_t t = 0; t < h.size(); ++t) {
        keys.insert(h.configs[t].key());
        const auto f = m.forward(h.configs[t]);
        const auto b = m.backward(h.configs[t]);
        ASSERT_EQ(f.has_value(), t + 1 < h.size());
        ASSERT_EQ(b.has_value(), t > 0);
        if (f) { ASSERT_EQ(m.backward(f->next)->next, h.configs[t]); }
        if (b) { ASSERT_EQ(b->next, h.configs[t - 1]); }
        int non_star = 0;
        for (auto x : h.configs[t].cursor) non_star += x != Cursor::Star;
        ASSERT_EQ(non_star, 1);
      }
      EXPECT_EQ(keys.size(), h.size());
    }
}

TEST(Ham8History, FinalConfigurationShape) {
  const auto c = worked_ham8();
  const auto h = ham8::enumerate(ham8::Machine(c));
  const auto& last = h.configs.back();
  const auto first = h.configs.front();
  EXPECT_EQ(last.cursor.front(), Cursor::MovLe);
  EXPECT_EQ(last.data, first.data);
  // Program shifted left so that it starts at cell 1.
  const auto l = ham8::program_layout(c);
  EXPECT_EQ(last.program[0], Program::Bul);
  for (std::size_t k = 0; k < l.program.size(); ++k) EXPECT_EQ(last.program[1 + k], l.program[k]);
  for (std::size_t j = 1 + l.program.size(); j < last.size(); ++j) EXPECT_EQ(last.program[j], Program::Bul);
}

TEST(Ham8History, WorkedExampleGateEvents) {
  const auto h = ham8::enumerate(ham8::Machine(worked_ham8()));
  std::vector<std::tuple<std::size_t, std::string, std::vector<int>>> logical;
  for (const auto& e : h.events)
    if (e.qubits.size() == 2) logical.emplace_back(e.step, e.label, e.qubits);
  using V = std::vector<int>;
  const decltype(logical) want = {{14, "W", V{1, 2}}, {16, "S", V{2, 3}}, {138, "S", V{1, 2}}, {140, "W", V{2, 3}}};
  EXPECT_EQ(logical, want);
  EXPECT_EQ(h.events.size(), 16u);
}

TEST(Ham8History, LogicalStateMatchesDirectSimulation) {
  std::mt19937_64 rng(43);
  const std::vector<Gate> pool = {gates::W(), gates::S(), gates::I2()};
  for (int trial = 0; trial < 12; ++trial) {
    const int n = 2 + trial % 3, r = 1 + trial % 3;
    const auto c = hqc1d::testing::random_circuit(n, r, pool, rng);
    const auto init = hqc1d::testing::random_state(n, rng);
    const auto h = ham8::enumerate(ham8::Machine(c));
    EXPECT_LE(max_abs(h.state_at(h.size(), init).amps - simulate_circuit(c, init).amps), 1e-9);
    std::size_t expect = 0;
    for (const auto& e : h.events)
      if (e.gate_index) { EXPECT_EQ(*e.gate_index, expect++); }
    EXPECT_EQ(expect, c.gate_count());
  }
}

TEST(Ham8Periodic, SameLengthAndXNeverRewritten) {
  for (int n = 2; n <= 4; ++n)
    for (int r = 1; r <= 3; ++r) {
      const auto open = ham8::enumerate(ham8::Machine(Circuit(n, r)));
      const auto ring = ham8::enumerate(ham8::Machine(Circuit(n, r), ham8::Boundary::PeriodicX));
      EXPECT_EQ(ring.transitions(), open.transitions());
      for (std::size_t t = 0; t < ring.size(); ++t) {
        const auto& c = ring.configs[t];
        ASSERT_EQ(c.cursor.back(), Cursor::X);
        for (std::size_t j = 0; j + 1 < c.size(); ++j) {
          ASSERT_EQ(c.cursor[j], open.configs[t].cursor[j]);
          ASSERT_EQ(c.program[j], open.configs[t].program[j]);
        }
      }
    }
}

TEST(Ham8Translation, MatchCommutesWithShift) {
  // Prepending a blank column (BUL program, 0 data, STAR cursor) shifts every
  // rule instance by one cell and changes nothing else.
  const ham8::Machine m(Circuit(3, 2));
  const auto h = enumerate_history(m);
  for (std::size_t t = 0; t + 1 < h.size(); ++t) {
    ham8::Config shifted = h.configs[t];
    shifted.cursor.insert(shifted.cursor.begin(), Cursor::Star);
    shifted.program.insert(shifted.program.begin(), Program::Bul);
    shifted.data.insert(shifted.data.begin(), 0);
    const auto a = m.forward(h.configs[t]);
    const auto b = m.forward(shifted);
    ASSERT_TRUE(a && b);
    EXPECT_EQ(a->rule, b->rule);
    ham8::Config want = a->next;
    want.cursor.insert(want.cursor.begin(), Cursor::Star);
    want.program.insert(want.program.begin(), Program::Bul);
    want.data.insert(want.data.begin(), 0);
    EXPECT_EQ(b->next, want);
  }
}

TEST(Ham8Rules, ReadingAPlaceholderIsReported) {
  ham8::Config c = ham8::initial_config(hqc1d::testing::w_pair());
  std::fill(c.cursor.begin(), c.cursor.end(), Cursor::Star);
  c.program.assign(c.size(), Program::Bul);
  c.cursor[1] = Cursor::Tur;  // 3a/3b would read data[2] = w1
  EXPECT_THROW(ham8::Machine(hqc1d::testing::w_pair()).forward(c), RuleEngineError);
}

TEST(Ham8Rules, ScaffoldChangesAreReported) {
  EXPECT_THROW(ham8::effective_event("W", gates::W().matrix(), 1, 0), RuleEngineError);
  EXPECT_THROW(ham8::effective_event("S", gates::S().matrix(), 0, 1), RuleEngineError);
  const auto id = ham8::effective_event("S", gates::S().matrix(), 1, 1);
  EXPECT_FALSE(id.is_logical());
  const auto one = ham8::effective_event("W", gates::W().matrix(), 1, -2);
  EXPECT_EQ(one.qubits, std::vector<int>{2});
  EXPECT_LE(max_abs(one.action - gates::Hy().matrix()), 1e-15);
  const auto none = ham8::effective_event("W", gates::W().matrix(), 0, -1);
  EXPECT_LE(max_abs(none.action - Matrix::Identity(2, 2)), 0.0);
}

TEST(Ham8Terms, TemplatesArePositionFree) {
  const auto terms = ham8::local_terms(ham8::Machine(worked_ham8()));
  int gate_templates = 0;
  for (const auto& t : terms) {
    EXPECT_EQ(t.coefficient, -1.0);
    if (t.forward.rule == "1a") { EXPECT_FALSE(t.forward.unitary); }
    if (t.forward.rule == "3a") { EXPECT_EQ(t.forward.data[1], ham8::DataCond::One); }
    if (t.forward.rule == "4a") {
      ++gate_templates;
      ASSERT_TRUE(t.forward.unitary);
      EXPECT_LE(max_abs(*t.forward.unitary - ham8::program_gate(t.forward.program_from[1]).matrix()), 0.0);
    }
  }
  EXPECT_EQ(gate_templates, 6);  // I, S, W in both directions
  EXPECT_EQ(terms.size(), 2 * ham8::templates().size());
}

TEST(Ham8Dump, RoundTripsThroughParse) {
  const auto h = ham8::enumerate(ham8::Machine(worked_ham8(), ham8::Boundary::PeriodicX));
  std::stringstream ss;
  ham8::dump(ss, h);
  const auto back = ham8::parse_dump(ss);
  ASSERT_EQ(back.size(), h.size());
  for (std::size_t t = 0; t < h.size(); ++t) {
    EXPECT_EQ(back[t].first, t);
    EXPECT_EQ(back[t].second, h.configs[t]);
    EXPECT_EQ(runner::infer_step(h, back[t].second), t);
  }
  std::stringstream bad("step 0\n  cursor * MOVL\n  program BUL\n  data 0 1\n");
  EXPECT_THROW(ham8::parse_dump(bad), ParseError);
}

}  // namespace
