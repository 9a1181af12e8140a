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


// Qubit-level algebra over the qudit space. Qubit 1 is the most
// significant bit of the qudit index: |2>_Q <-> |10>.

#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "fequdit/ladder.hpp"
#include "fequdit/qudit.hpp"
#include "fequdit/types.hpp"

namespace fequdit {

CMatrix identity(int dim);
CMatrix hadamard();
CMatrix pauli_x();
CMatrix pauli_y();
CMatrix pauli_z();
CMatrix t_gate();
/// exp(-i theta sigma / 2).
CMatrix rx(double theta);
CMatrix ry(double theta);
CMatrix rz(double theta);
/// Flips qubit `target` when qubit `control` is 1; qubits are 1-based.
CMatrix cnot(int control, int target, int n_qubits = 2);
CMatrix swap_gate(int a, int b, int n_qubits = 2);
/// |beta_xy> = (|0 y> + (-1)^x |1 !y>) / sqrt 2.
CVector bell_state(int x, int y);
CMatrix bell_projector(int x, int y);

/// Named gates: H, X, Y, Z, T, Rx, Ry, Rz (at `angle`), CNOT12, CNOT21,
/// SWAP and the four Bell projectors.
std::map<std::string, CMatrix> gate_zoo(double angle = kPi / 4);

/// Kronecker product a (x) b.
CMatrix kron(const CMatrix& a, const CMatrix& b);
/// I^{(i-1)} (x) u (x) I^{(n-i-m+1)} for an m-qubit u starting at qubit i.
CMatrix embed(const CMatrix& u, int position, int n_qubits);

/// 1 - |tr(V^dag U)| / d, in [0, 1].
double phase_dist(const CMatrix& u, const CMatrix& v);
double phase_dist(const QuditUnitary& u, const QuditUnitary& v);

/// max-norm distance after aligning the global phase of `rhs` to `lhs`.
/// The phase is the trace-optimal one, so this bounds the true minimum
/// over phases from above.
double global_phase_residual(const CMatrix& lhs, const CMatrix& rhs);

/// |<target|state>|^2 for normalized vectors.
double state_fidelity(const CVector& state, const CVector& target);

struct IdentityReport {
  std::string name;
  std::string lhs;
  std::string rhs;
  double residual = 0.0;
  double tolerance = 0.0;
  int samples = 1;
  bool passed = false;
  std::string note;
};

/// (<sigma_x>, <sigma_y>, <sigma_z>) of the reduced state of a qubit.
/// Throws unless |alpha| = 1 to 1e-8.
std::array<double, 3> bloch_vector(const QuditState& state, int qubit);
std::array<double, 3> bloch_vector(const CVector& alpha, int qubit);

struct SweepOptions {
  int samples = 100;
  std::uint64_t seed = 1;
  double tolerance = 1e-9;
  double max_coupling = kPi;
};

/// Random drive on the given harmonics, |g_j| <= max_coupling.
HarmonicDrive random_drive(const std::vector<int>& harmonics, double max_coupling,
                           std::uint64_t seed);

/// Seven dimensional-reduction identities (d = 4 -> 2, 8 -> 4, 8 -> 2),
/// worst residual over random couplings.
std::vector<IdentityReport> results_suite(const SweepOptions& options = {});

struct PhaseSolveResult {
  HarmonicDrive drive;
  double residual = 0.0;  // phase_dist between the target and the solved gate
  bool exact = false;     // the phase map was onto the target space
};

/// PINEM drive on harmonics 1..n_harmonics whose qudit gate equals
/// exp(i diag(target_phases)) up to global phase. Least squares with
/// 2 pi wrap-around refinement when the harmonics cannot span all phases.
PhaseSolveResult phase_gate_solve(const RVector& target_phases, int n_harmonics);

/// Factorizations on d = 2^n: PINEM on harmonics that are multiples of
/// 2^k versus I^{(k)} (x) smaller PINEM, and 2^k propagation steps versus
/// smaller propagation (x) I^{(k)}.
std::pair<IdentityReport, IdentityReport> conjecture1_check(int n, int k,
                                                            const SweepOptions& options = {});

struct PhaseSweepReport {
  int dim = 0;
  int n_harmonics = 0;
  int samples = 0;
  int successes = 0;
  double threshold = 0.0;
  double worst_residual = 0.0;
  /// Counts per decade: residual < 1e-15, < 1e-14, ..., < 1e-1, >= 1e-1.
  std::vector<int> histogram;
  double success_rate() const { return samples == 0 ? 0.0 : double(successes) / samples; }
};

/// Solves random diagonal targets in (-pi, pi]^d.
PhaseSweepReport conjecture2_sweep(int d, int n_harmonics, const SweepOptions& options,
                                   double threshold = 1e-6);

}  // namespace fequdit
