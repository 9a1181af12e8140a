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


// Synthetic qudit space: DFT-like projection of the ladder onto d = 2^n
// amplitudes, and the d x d gates the ladder operators induce there.

#pragma once

#include <cstdint>
#include <vector>

#include "fequdit/ladder.hpp"
#include "fequdit/types.hpp"

namespace fequdit {

/// Encoded amplitudes alpha_k. The norm is recorded, not forced to one:
/// the projection is not an isometry on arbitrary ladder states.
struct QuditState {
  int dim = 0;
  CVector alpha;
  double norm = 0.0;

  QuditState() = default;
  QuditState(int dim, CVector alpha);

  /// alpha / |alpha|; throws on a zero vector.
  CVector normalized() const;
};

/// d x d unitary acting on the qudit space.
class QuditUnitary {
 public:
  /// Throws unless square, power-of-two sized and unitary to `tolerance`.
  explicit QuditUnitary(CMatrix matrix, double tolerance = 1e-10);
  static QuditUnitary identity(int dim);

  int dim() const { return static_cast<int>(matrix_.rows()); }
  const CMatrix& matrix() const { return matrix_; }
  double unitarity_error() const;

  friend QuditUnitary operator*(const QuditUnitary& a, const QuditUnitary& b);

 private:
  CMatrix matrix_;
};

/// Propagation by `steps` fundamental distances z_D / (2d).
struct FspSteps {
  int steps = 0;
  int dim = 0;

  /// Throws unless z_ratio * 2d is a non-negative integer.
  static FspSteps from_ratio(const Rational& z_ratio, int dim);
  Rational z_ratio() const { return Rational(steps, 2 * dim); }
};

/// zeta_d^m with zeta_d = exp(-2 pi i / d), exact in the exponent.
Complex root_of_unity_power(int d, std::int64_t m);

/// alpha_k = d^{-1/2} sum_l zeta_d^{k l} psi_l.
QuditState encode(const LadderState& state, int d);

/// [U_DFT]_{j,k} = d^{-1/2} zeta_d^{j k}.
QuditUnitary dft_matrix(int d);

enum class EigenphaseMethod {
  kCharacterSum,  // sum_m f_m zeta_d^{k m} over the ladder amplitudes
  kClosedForm,    // exp(2i sum_j |g_j| sin(2 pi j k / d - arg g_j))
};

/// Derivative of the qudit phase p_k with respect to Re g_j and Im g_j:
/// p_k = Re g_j * re(k) + Im g_j * im(k), re = 2 sin(2 pi j k / d),
/// im = -2 cos(2 pi j k / d).
struct PhaseCoefficients {
  RVector re;
  RVector im;
};
PhaseCoefficients pinem_phase_coefficients(int d, int j);

/// Real phases p_k with lambda_k = exp(i p_k), unreduced.
RVector pinem_phases(const HarmonicDrive& drive, int d);

/// Eigenvalues lambda_k of the PINEM gate on the qudit space.
CVector pinem_eigenphases(const HarmonicDrive& drive, int d,
                          EigenphaseMethod method = EigenphaseMethod::kCharacterSum);

/// diag(lambda_0, ..., lambda_{d-1}).
QuditUnitary pinem_qudit(const HarmonicDrive& drive, int d,
                         EigenphaseMethod method = EigenphaseMethod::kCharacterSum);

/// diag(exp(-i pi steps k^2 / d)): the propagation in the DFT frame.
CVector fsp_diagonal(int d, int steps);

/// U_DFT^dagger diag(exp(-i pi k^2/d))^steps U_DFT. Throws on negative
/// steps or a non-power-of-two d.
QuditUnitary fsp_qudit(const FspSteps& steps);

/// d ladder states on rungs 0..d-1 that encode to the canonical basis.
std::vector<LadderState> decode_basis(int d, int half_width = 0);

/// Column k = encode(op(decode_basis(d)[k])). Equals the induced d x d gate
/// when the operator is closed on the qudit space.
CMatrix project_operator(const LadderOp& op, int d);

struct ClosureOptions {
  int support = 0;        // random state support; 0 selects 2d
  int n_probe = 0;        // fit states; 0 selects 2d
  int n_test = 50;
  std::uint64_t seed = 1;
};

struct ClosureResult {
  double residual = 0.0;  // max_psi |encode(op psi) - M encode(psi)|
  CMatrix fit;            // best linear d x d fit M
};

/// Closure witness: fits M on probe states, then measures the worst
/// mismatch on fresh random states.
ClosureResult closure_residual(const LadderOp& op, int d, const ClosureOptions& options = {});

/// Random normalized ladder state with complex Gaussian amplitudes on
/// [-support, support].
LadderState random_ladder_state(int half_width, int support, std::uint64_t seed);

}  // namespace fequdit
