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

// Electron energy ladder: truncated states, PINEM interactions and
// free-space propagation acting on the rung amplitudes psi_l.

#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "fequdit/types.hpp"

namespace fequdit {

inline constexpr double kDefaultTruncationBudget = 1e-10;

struct Harmonic {
  int j;      // multiple of the fundamental laser frequency
  Complex g;  // dimensionless coupling
  friend bool operator==(const Harmonic&, const Harmonic&) = default;
};

/// Set of laser harmonics driving one PINEM interaction, sorted by j.
class HarmonicDrive {
 public:
  HarmonicDrive() = default;
  /// Throws std::invalid_argument on non-positive or repeated j.
  explicit HarmonicDrive(std::vector<Harmonic> terms);

  const std::vector<Harmonic>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  int max_harmonic() const { return terms_.empty() ? 0 : terms_.back().j; }
  /// Coupling of harmonic j, zero when absent.
  Complex coupling(int j) const;

  /// Sum of generators: couplings of equal harmonics add.
  friend HarmonicDrive operator+(const HarmonicDrive& a, const HarmonicDrive& b);
  friend bool operator==(const HarmonicDrive&, const HarmonicDrive&) = default;

 private:
  std::vector<Harmonic> terms_;
};

/// Amplitudes psi_l on the symmetric window l in [-L, L].
class LadderState {
 public:
  /// Takes amplitudes indexed by L + l. Throws unless the vector has
  /// length 2L+1 and unit norm to `norm_tolerance`.
  LadderState(int half_width, CVector amplitudes, double norm_tolerance = 1e-12);

  /// Normalizes first; throws on a zero vector.
  static LadderState normalized(int half_width, CVector amplitudes);
  /// psi_l = delta_{l,0}.
  static LadderState mono_energetic(int half_width);

  int half_width() const { return half_width_; }
  int size() const { return static_cast<int>(amplitudes_.size()); }
  const CVector& amplitudes() const { return amplitudes_; }
  Complex at(int ell) const;
  double norm() const { return amplitudes_.norm(); }
  double edge_mass() const;
  /// Smallest s with the probability outside [-s, s] below `tail`.
  int support(double tail = 1e-24) const;

  /// Copy onto a wider (or equal) window, zero padded.
  LadderState widened(int half_width) const;

 private:
  int half_width_;
  CVector amplitudes_;
};

/// Electron kinematics and laser frequency. Only the dispersion length
/// derived from these is used, and only for reporting.
struct PhysicalParams {
  double beta = 0.0;
  double lorentz_gamma = 1.0;
  double velocity = 0.0;         // m/s
  double omega = 0.0;            // fundamental laser angular frequency, rad/s
  double omega_compton = 7.8e20; // rad/s
  std::optional<double> kinetic_energy_ev;
  std::optional<double> energy_spread_ev;
  std::optional<double> z_dispersion_override;  // meters

  /// Throws unless 0 < beta < 1 and omega > 0.
  static PhysicalParams from_beta(double beta, double omega);
  /// Electron kinetic energy and photon energy, both in eV.
  static PhysicalParams from_energies(double kinetic_energy_ev, double photon_energy_ev,
                                      std::optional<double> energy_spread_ev = std::nullopt);

  double photon_energy_ev() const;
  /// E0 / hbar*omega > 1e3 and hbar*omega / dE0 > 1. False when the
  /// metadata is missing.
  bool is_valid_regime() const;
};

inline constexpr double kSpeedOfLight = 299792458.0;          // m/s
inline constexpr double kHbarEvSeconds = 6.582119569e-16;     // eV s
inline constexpr double kElectronRestEnergyEv = 510998.95;    // eV

/// Band generator A with A[l, l+j] = conj(g_j) and A[l, l-j] = -g_j on the
/// window [-L, L]. Anti-Hermitian. Throws if L < max harmonic.
CMatrix pinem_generator(const HarmonicDrive& drive, int half_width);

/// exp(A) through the eigendecomposition of the Hermitian matrix iA.
CMatrix pinem_unitary(const HarmonicDrive& drive, int half_width);

struct PinemAmplitudes {
  int half_width = 0;
  CVector f;                    // f_l at index L + l
  double edge_mass = 0.0;
  bool truncation_warning = false;

  Complex at(int ell) const {
    return std::abs(ell) > half_width ? Complex{} : f(half_width + ell);
  }
};

/// Central column of pinem_unitary, i.e. U|0> = sum_l f_l |l>. Evaluated
/// by propagating |0> with the banded generator rather than forming the
/// dense exponential.
PinemAmplitudes pinem_amplitudes(const HarmonicDrive& drive, int half_width,
                                 double budget = kDefaultTruncationBudget);

/// Window half-width that holds a drive applied to a state supported on
/// [-support, support]: support + ceil(sum_j j (2|g_j| + 20)).
int required_half_width(const HarmonicDrive& drive, int support);

/// Convolution of the state with the drive's amplitudes on the state's own
/// window. Throws TruncationError when more than `budget` probability
/// would leave the window or land on its edge.
LadderState apply_pinem(const LadderState& state, const HarmonicDrive& drive,
                        double budget = kDefaultTruncationBudget);

/// 2 pi (z/z_D) l^2 reduced to [0, 2 pi) with exact integer arithmetic.
double fsp_phase(const Rational& z_ratio, int ell);

/// psi_l <- exp(-i phase_l) psi_l.
LadderState apply_fsp(const LadderState& state, const Rational& z_ratio);

/// z_D = 2 beta^2 gamma^3 omega_C v / omega^2 in meters, or the override.
double z_dispersion(const PhysicalParams& params);

/// |psi_l|^2 indexed by L + l.
RVector eels_spectrum(const LadderState& state);

/// Ladder-level operator: a PINEM drive or a propagation distance z/z_D.
struct PinemOp {
  HarmonicDrive drive;
};
struct FspOp {
  Rational z_ratio;
};
using LadderOp = std::variant<PinemOp, FspOp>;

LadderState apply_op(const LadderState& state, const LadderOp& op,
                     double budget = kDefaultTruncationBudget);
/// Extra rungs an operator can populate on either side.
int op_reach(const LadderOp& op);

}  // namespace fequdit
