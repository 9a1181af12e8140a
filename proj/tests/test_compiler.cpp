// Copyright 2026 The fequdit Authors
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


#include "fequdit/compiler.hpp"

#include <cmath>

#include <gtest/gtest.h>

#include "fequdit/optimize.hpp"

namespace fequdit {
namespace {

GateSchedule sample_schedule() {
  GateSchedule s;
  s.dim = 4;
  s.steps = {PinemStep{HarmonicDrive({{1, Complex(0.4, -0.3)}, {2, Complex(0.1, 0.8)}})},
             FspStep{1},
             PinemStep{HarmonicDrive({{1, Complex(-0.7, 0.2)}})},
             FspStep{3},
             PinemStep{HarmonicDrive({{2, Complex(0.0, -0.5)}})}};
  return s;
}

TEST(ScheduleTest, ThenMergesNeighbours) {
  GateSchedule a;
  a.steps = {FspStep{1}, PinemStep{HarmonicDrive({{1, 1.0}})}};
  GateSchedule b;
  b.steps = {PinemStep{HarmonicDrive({{1, Complex(0, 1)}})}, FspStep{2}, FspStep{3}};
  const GateSchedule c = a.then(b);
  ASSERT_EQ(c.steps.size(), 3u);
  EXPECT_EQ(std::get<PinemStep>(c.steps[1]).drive.coupling(1), Complex(1, 1));
  EXPECT_EQ(std::get<FspStep>(c.steps[2]).steps, 5);
  EXPECT_EQ(c.pinem_count(), 1);
  GateSchedule z;
  z.steps = {FspStep{0}};
  EXPECT_TRUE(z.simplified().steps.empty());
  GateSchedule other;
  other.dim = 8;
  EXPECT_THROW(a.then(other), std::invalid_argument);
}

TEST(ScheduleTest, MergedPinemsMatchSequential) {
  GateSchedule seq;
  seq.steps = {PinemStep{HarmonicDrive({{1, 0.3}})}, PinemStep{HarmonicDrive({{2, 0.7}})}};
  EXPECT_LT(phase_dist(schedule_unitary(seq), schedule_unitary(seq.simplified())), 1e-14);
}

TEST(ScheduleTest, QuditAndLadderLevelsAgree) {
  const GateSchedule s = sample_schedule();
  EXPECT_LT(cross_level_residual(s), 1e-9);
  const CMatrix closed = schedule_unitary(s).matrix();
  const CMatrix chars = schedule_unitary(s, EigenphaseMethod::kCharacterSum).matrix();
  EXPECT_LT(max_abs(closed - chars), 1e-10);
}

TEST(ScheduleTest, EmptyAndCommutingPinems) {
  EXPECT_LT(max_abs(schedule_unitary(GateSchedule{}).matrix() - CMatrix::Identity(4, 4)), 1e-15);
  const PinemStep a{HarmonicDrive({{1, Complex(0.3, 1.2)}})};
  const PinemStep b{HarmonicDrive({{2, Complex(-0.8, 0.4)}})};
  GateSchedule ab, ba;
  ab.steps = {a, b};
  ba.steps = {b, a};
  EXPECT_LT(max_abs(schedule_unitary(ab).matrix() - schedule_unitary(ba).matrix()), 1e-14);
}

TEST(ObjectiveTest, GradientMatchesFiniteDifferences) {
  const QuditUnitary targets[] = {QuditUnitary(cnot(2, 1)), QuditUnitary(swap_gate(1, 2, 3))};
  for (const QuditUnitary& target : targets) {
    const ScheduleObjective obj(target, default_harmonics(target.dim()), {1, 2, 3});
    RVector x(obj.parameter_count());
    for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = std::sin(1.7 * i + 0.3);
    RVector g;
    obj(x, &g);
    const RVector fd = finite_difference_gradient(
        [&](const RVector& y, RVector* gg) { return obj(y, gg); }, x);
    EXPECT_LT((g - fd).norm(), 1e-7 * std::max(1.0, fd.norm())) << "dim " << target.dim();
  }
}

TEST(ObjectiveTest, ScheduleReproducesValue) {
  const QuditUnitary target(cnot(2, 1));
  const ScheduleObjective obj(target, {1, 2}, {2, 1});
  RVector x(obj.parameter_count());
  for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = 0.1 * (i + 1);
  const GateSchedule s = obj.schedule(x);
  EXPECT_EQ(s.pinem_count(), 3);
  const double t = std::abs((target.matrix().adjoint() * schedule_unitary(s).matrix()).trace());
  EXPECT_NEAR(obj(x, nullptr), 1.0 - t * t / 16.0, 1e-14);
  // Wrapping pi-periodic coordinates leaves the gate unchanged.
  RVector shifted = x;
  shifted.array() += 3 * kPi;
  EXPECT_NEAR(obj(obj.canonicalize(shifted), nullptr), obj(x, nullptr), 1e-12);
}

TEST(CompileTest, NamedGatesWithinBudget) {
  for (NamedGate gate : {NamedGate::kHadamard1, NamedGate::kCnot21, NamedGate::kSwap}) {
    const CompileReport r = compile_named(gate);
    EXPECT_TRUE(r.converged) << r.target_name;
    EXPECT_LT(r.infidelity, 1e-6) << r.target_name;
    EXPECT_LE(r.schedule.pinem_count(), named_gate_budget(gate)) << r.target_name;
    EXPECT_LT(cross_level_residual(r.schedule), 1e-8) << r.target_name;
  }
}

TEST(CompileTest, ComposedGates) {
  for (NamedGate gate : {NamedGate::kHadamard2, NamedGate::kCnot12, NamedGate::kRx1}) {
    const CompileReport r = compile_named(gate);
    EXPECT_TRUE(r.converged) << r.target_name;
    EXPECT_LE(r.schedule.pinem_count(), named_gate_budget(gate)) << r.target_name;
  }
  const CompileReport rz = compile_named(NamedGate::kRzPair, {kPi / 2, -kPi / 2});
  EXPECT_EQ(rz.schedule.pinem_count(), 1);
  EXPECT_EQ(rz.schedule.steps.size(), 1u);
  EXPECT_LT(rz.infidelity, 1e-9);
}

TEST(CompileTest, RecoversTargetInsideFamily) {
  const QuditUnitary target = pinem_qudit(HarmonicDrive({{1, Complex(0.4, -0.9)}, {2, Complex(0, 0.6)}}), 4);
  CompileTemplate one;
  one.n_pinem = 1;
  const CompileReport r = compile(target, one);
  EXPECT_TRUE(r.converged);
  EXPECT_LT(r.infidelity, 1e-10);
}

TEST(CompileTest, InfidelityRecomputableFromSchedule) {
  const CompileReport r = compile_named(NamedGate::kCnot21);
  const QuditUnitary again = schedule_unitary(r.schedule);
  EXPECT_NEAR(phase_dist(again, named_gate_target(NamedGate::kCnot21)), r.infidelity, 1e-12);
}

TEST(CompileTest, DeterministicAcrossThreadCounts) {
  CompileOptions one;
  one.n_threads = 1;
  one.seed = 11;
  CompileOptions many = one;
  many.n_threads = 3;
  const CompileReport a = compile_named(NamedGate::kHadamard1, {}, one);
  const CompileReport b = compile_named(NamedGate::kHadamard1, {}, many);
  EXPECT_EQ(a.schedule, b.schedule);
  EXPECT_EQ(a.n_starts, b.n_starts);
  EXPECT_EQ(a.schedule, compile_named(NamedGate::kHadamard1, {}, one).schedule);
}

TEST(CompileTest, EmptyTemplateAndBadPattern) {
  CompileTemplate none;
  none.n_pinem = 0;
  EXPECT_TRUE(compile(QuditUnitary::identity(4), none).converged);
  EXPECT_FALSE(compile(QuditUnitary(cnot(2, 1)), none).converged);
  CompileTemplate bad;
  bad.n_pinem = 3;
  bad.fsp_pattern = std::vector<int>{1};
  EXPECT_THROW(compile(QuditUnitary(cnot(2, 1)), bad), std::invalid_argument);
}

TEST(CompileTest, SinglePinemCannotMakeCnot) {
  CompileTemplate one;
  one.n_pinem = 1;
  CompileOptions opts;
  opts.n_starts = 4;
  EXPECT_FALSE(compile(QuditUnitary(cnot(2, 1)), one, opts).converged);
}

TEST(NamedGateTest, ParseAndNames) {
  EXPECT_EQ(parse_named_gate("cnot21"), NamedGate::kCnot21);
  EXPECT_EQ(parse_named_gate("rz"), NamedGate::kRzPair);
  EXPECT_EQ(named_gate_name(parse_named_gate("h2")), "hadamard_2");
  EXPECT_THROW(parse_named_gate("toffoli"), std::invalid_argument);
}

TEST(ProgramTest, BellState) {
  const BellResult r = bell_program();
  EXPECT_GT(r.intermediate_fidelity, 1 - 1e-9);
  EXPECT_GT(r.fidelity, 1 - 1e-9);
  // Gate errors scale like the square root of the 1e-8 phase_dist threshold.
  EXPECT_LT(std::hypot(r.bloch_q1[0], r.bloch_q1[1], r.bloch_q1[2]), 1e-4);
  EXPECT_LT(std::hypot(r.bloch_q2[0], r.bloch_q2[1], r.bloch_q2[2]), 1e-4);
  EXPECT_LT(r.cross_level_residual, 1e-8);
}

TEST(ProgramTest, RotationSequence) {
  const RotationResult r = rotation_program();
  EXPECT_GT(r.final_fidelity, 1 - 1e-9);
  EXPECT_LT(r.hth_vs_rx, 1e-12);
  // The net unitary is Rx(pi/2) Rz(pi/2) x Rz(-pi/2).
  EXPECT_LT(r.net_vs_composition, 1e-7);
  EXPECT_NEAR(r.net_vs_ry_rz, 1 - 1 / std::sqrt(2.0), 1e-5);
  EXPECT_NEAR(r.reference_coupling_infidelity, 0.5, 1e-9);
  ASSERT_FALSE(r.trajectory.empty());
  EXPECT_EQ(r.trajectory.front().label, "initial");
  EXPECT_NEAR(r.trajectory.front().q1[0], 1.0, 1e-12);
  EXPECT_NEAR(r.trajectory.back().q2[1], -1.0, 1e-9);
}

TEST(ExportTest, LengthsAndWarnings) {
  PhysicalParams p = PhysicalParams::from_energies(200e3, 1.0);
  p.z_dispersion_override = 8e-3;
  GateSchedule s;
  s.steps = {FspStep{1}};
  const PhysicalSchedule ps = export_physical(s, p);
  ASSERT_EQ(ps.steps.size(), 1u);
  EXPECT_NEAR(std::get<PhysicalDrift>(ps.steps[0]).length, 1e-3, 1e-18);
  EXPECT_TRUE(ps.warnings.empty());

  EXPECT_TRUE(export_physical(GateSchedule{}, p).steps.empty());

  GateSchedule strong;
  strong.steps = {PinemStep{HarmonicDrive({{1, 3 * kPi}})}};
  const PhysicalSchedule w = export_physical(strong, p);
  EXPECT_FALSE(w.warnings.empty());
  const auto& term = std::get<PhysicalInteraction>(w.steps[0]).terms[0];
  EXPECT_NEAR(term.magnitude, 3 * kPi, 1e-15);
  EXPECT_NEAR(term.omega, p.omega, 1e-3);
}

TEST(ConjectureTest, NearestNeighbourSwapRuns) {
  CompileTemplate tmpl;
  tmpl.n_pinem = 2;
  tmpl.max_patterns = 1;
  CompileOptions opts;
  opts.n_starts = 2;
  opts.max_iterations = 50;
  const CompileReport r = conjecture3_check(3, 1, tmpl, opts);
  EXPECT_EQ(r.schedule.dim, 8);
  EXPECT_EQ(r.n_starts, 2);
  EXPECT_GT(r.infidelity, 0.0);
}

}  // namespace
}  // namespace fequdit
