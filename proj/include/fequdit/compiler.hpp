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


// Synthesis of alternating PINEM / free-space-propagation schedules that
// realize target qudit unitaries.

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "fequdit/gates.hpp"
#include "fequdit/ladder.hpp"
#include "fequdit/qudit.hpp"

namespace fequdit {

struct PinemStep {
  HarmonicDrive drive;
  friend bool operator==(const PinemStep&, const PinemStep&) = default;
};

/// Propagation by `steps` fundamental distances z_D / (2d).
struct FspStep {
  int steps = 0;
  friend bool operator==(const FspStep&, const FspStep&) = default;
};

using ScheduleStep = std::variant<PinemStep, FspStep>;

/// Steps in the order the electron meets them.
struct GateSchedule {
  int dim = 4;
  std::vector<ScheduleStep> steps;

  int pinem_count() const;
  /// This schedule followed by `next`, with adjacent PINEMs merged (their
  /// generators commute and add) and adjacent propagations summed.
  GateSchedule then(const GateSchedule& next) const;
  GateSchedule simplified() const;

  friend bool operator==(const GateSchedule&, const GateSchedule&) = default;
};

/// Product of the per-step qudit gates, last step leftmost.
QuditUnitary schedule_unitary(const GateSchedule& schedule,
                              EigenphaseMethod method = EigenphaseMethod::kClosedForm);

/// Half-width that holds the whole schedule applied to a state supported
/// on [-support, support].
int schedule_half_width(const GateSchedule& schedule, int support);

/// Runs the schedule on the ladder itself.
LadderState apply_schedule(const LadderState& state, const GateSchedule& schedule,
                           double budget = kDefaultTruncationBudget);

/// max |encode(schedule(decode_basis_k)) - schedule_unitary e_k| over k.
double cross_level_residual(const GateSchedule& schedule);

struct CompileTemplate {
  int n_pinem = 1;
  /// Harmonics per PINEM; empty selects {1, 2} for d = 4 and 1..d/2 otherwise.
  std::vector<int> harmonics;
  /// Fixed propagation steps between consecutive PINEMs (n_pinem - 1 of them).
  std::optional<std::vector<int>> fsp_pattern;
  /// Otherwise every pattern over this set is tried in lexicographic order.
  std::vector<int> fsp_step_set = {1, 2, 3};
  /// Cap on enumerated patterns; 0 means all.
  int max_patterns = 0;
};

struct CompileOptions {
  int n_starts = 64;
  std::uint64_t seed = 1;
  double threshold = 1e-8;  // phase_dist that counts as converged
  int max_iterations = 1000;
  int n_threads = 0;        // 0 selects the hardware concurrency
};

struct CompileReport {
  std::string target_name;
  GateSchedule schedule;
  double infidelity = 1.0;
  bool converged = false;
  int n_starts = 0;
  int n_iterations = 0;
  int n_patterns = 0;
  std::uint64_t rng_seed = 0;
  double wall_time = 0.0;  // seconds; not part of the serialized report
};

std::vector<int> default_harmonics(int d);

/// Multi-start quasi-Newton search over the couplings of a fixed-shape
/// schedule, enumerating discrete propagation patterns. Starts are
/// independent and seeded by (seed, pattern, start), and the lowest
/// converged start index wins, so the result does not depend on threading.
CompileReport compile(const QuditUnitary& target, const CompileTemplate& tmpl,
                      const CompileOptions& options = {});

/// Objective used by compile: 1 - |tr(V^dag U(x))|^2 / d^2 over the
/// active coupling parameters of a fixed schedule shape.
class ScheduleObjective {
 public:
  ScheduleObjective(const QuditUnitary& target, std::vector<int> harmonics,
                    std::vector<int> fsp_pattern);

  int parameter_count() const { return static_cast<int>(columns_.size()) * n_pinem_; }
  double operator()(const RVector& x, RVector* gradient) const;
  GateSchedule schedule(const RVector& x) const;
  /// Reduces parameters with period pi into (-pi/2, pi/2].
  RVector canonicalize(RVector x) const;

 private:
  struct Column {
    int j;
    bool real_part;
    RVector coefficients;
    bool pi_periodic;
  };

  int dim_;
  int n_pinem_;
  CMatrix target_adjoint_;
  std::vector<int> harmonics_;
  std::vector<int> pattern_;
  std::vector<CMatrix> propagators_;
  std::vector<Column> columns_;
};

enum class NamedGate { kHadamard1, kHadamard2, kCnot21, kCnot12, kSwap, kRzPair, kRx1 };

/// Parses hadamard_1, hadamard_2, cnot_21 (cnot21), cnot_12 (cnot12),
/// swap, rz_pair (rz), rx_1 (rx).
NamedGate parse_named_gate(const std::string& name);
std::string named_gate_name(NamedGate gate);
/// Maximum PINEM count allowed for a named gate.
int named_gate_budget(NamedGate gate);
QuditUnitary named_gate_target(NamedGate gate, const std::vector<double>& angles = {});

/// Compiles a named two-qubit gate with its default template. rz_pair is
/// solved directly as one PINEM; cnot_12 and rx_1 are composed from other
/// compiled gates.
CompileReport compile_named(NamedGate gate, const std::vector<double>& angles = {},
                            const CompileOptions& options = {});

struct BellResult {
  GateSchedule schedule;
  QuditState after_hadamard;
  QuditState state;
  double intermediate_fidelity = 0.0;  // vs (|00> + |01>)/sqrt 2
  double fidelity = 0.0;               // vs (|00> + |11>)/sqrt 2
  std::array<double, 3> bloch_q1{};
  std::array<double, 3> bloch_q2{};
  double cross_level_residual = 0.0;
};

/// |00> -> H_2 -> CNOT_{2->1}, run on the ladder from the decoded |00>.
BellResult bell_program(const CompileOptions& options = {});

struct TrajectoryPoint {
  std::string label;
  std::array<double, 3> q1{};
  std::array<double, 3> q2{};
};

struct RotationResult {
  GateSchedule schedule;
  HarmonicDrive rz_drive;
  std::vector<TrajectoryPoint> trajectory;
  QuditState initial;
  QuditState final_state;
  double final_fidelity = 0.0;        // vs |0> (x) (|0> - i|1>)/sqrt 2
  double net_vs_ry_rz = 1.0;          // phase_dist(net, Ry(-pi/2) x Rz(-pi/2))
  double net_vs_composition = 1.0;    // phase_dist(net, Rx(pi/2)Rz(pi/2) x Rz(-pi/2))
  double hth_vs_rx = 1.0;             // global-phase residual of HTH vs Rx(pi/4)
  double reference_coupling_infidelity = 1.0;  // g1 = pi/8 (1+i), g2 = 15 pi i / 16
};

/// Rz_1(pi/2) Rz_2(-pi/2) as one PINEM, then Rx_1(pi/4) twice, starting
/// from the mono-energetic electron.
RotationResult rotation_program(const CompileOptions& options = {});

/// Target embed(SWAP, (i, i+1), n), compiled under the given template.
CompileReport conjecture3_check(int n, int first_qubit, const CompileTemplate& tmpl,
                                const CompileOptions& options = {});

struct PhysicalInteraction {
  struct Term {
    int j;
    double omega;      // rad/s
    double magnitude;  // |g_j|
    double phase;      // arg g_j
  };
  std::vector<Term> terms;
};

struct PhysicalDrift {
  int steps = 0;
  double length = 0.0;  // meters
};

using PhysicalStep = std::variant<PhysicalInteraction, PhysicalDrift>;

struct PhysicalSchedule {
  int dim = 0;
  PhysicalParams params;
  double z_dispersion = 0.0;
  std::vector<PhysicalStep> steps;
  std::vector<std::string> warnings;
};

/// Couplings above this magnitude are flagged as beyond typical fields.
inline constexpr double kFeasibleCoupling = 2.0 * kPi;

PhysicalSchedule export_physical(const GateSchedule& schedule, const PhysicalParams& params);

}  // namespace fequdit
