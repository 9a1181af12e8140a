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


#include "fequdit/qudit.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace fequdit {
namespace {

std::vector<Complex> root_table(int d) {
  std::vector<Complex> roots(d);
  for (int m = 0; m < d; ++m) roots[m] = std::polar(1.0, -kTwoPi * m / d);
  return roots;
}

int mod(std::int64_t a, int d) {
  const std::int64_t r = a % d;
  return static_cast<int>(r < 0 ? r + d : r);
}

}  // namespace

QuditState::QuditState(int dim_, CVector alpha_) : dim(dim_), alpha(std::move(alpha_)) {
  qubit_count(dim);
  if (alpha.size() != dim) throw std::invalid_argument("qudit amplitudes must have length d");
  norm = alpha.norm();
}

CVector QuditState::normalized() const {
  if (norm == 0.0) throw std::invalid_argument("cannot normalize a zero qudit state");
  return alpha / norm;
}

QuditUnitary::QuditUnitary(CMatrix matrix, double tolerance) : matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols()) throw std::invalid_argument("qudit gate must be square");
  qubit_count(static_cast<int>(matrix_.rows()));
  if (unitarity_error() > tolerance) {
    std::ostringstream os;
    os << "qudit gate is not unitary: |U^dag U - I|_max = " << unitarity_error();
    throw std::invalid_argument(os.str());
  }
}

QuditUnitary QuditUnitary::identity(int dim) {
  return QuditUnitary(CMatrix::Identity(dim, dim));
}

double QuditUnitary::unitarity_error() const {
  const auto n = matrix_.rows();
  return max_abs(matrix_.adjoint() * matrix_ - CMatrix::Identity(n, n));
}

QuditUnitary operator*(const QuditUnitary& a, const QuditUnitary& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("qudit gate dimensions differ");
  return QuditUnitary(a.matrix_ * b.matrix_);
}

FspSteps FspSteps::from_ratio(const Rational& z_ratio, int dim) {
  qubit_count(dim);
  const Rational steps = z_ratio * Rational(2 * dim);
  if (!steps.is_integer()) {
    std::ostringstream os;
    os << "propagation z/z_D = " << z_ratio.num << "/" << z_ratio.den
       << " is not a multiple of z_D/" << 2 * dim << "; the qudit space is not closed";
    throw std::invalid_argument(os.str());
  }
  if (steps.num < 0) throw std::invalid_argument("propagation distance must be non-negative");
  return FspSteps{static_cast<int>(steps.num), dim};
}

Complex root_of_unity_power(int d, std::int64_t m) {
  return std::polar(1.0, -kTwoPi * mod(m, d) / d);
}

QuditState encode(const LadderState& state, int d) {
  qubit_count(d);
  const auto roots = root_table(d);
  const int half = state.half_width();
  CVector alpha = CVector::Zero(d);
  for (int ell = -half; ell <= half; ++ell) {
    const Complex psi = state.at(ell);
    if (psi == Complex{}) continue;
    const int r = mod(ell, d);
    for (int k = 0; k < d; ++k) alpha(k) += roots[(k * r) % d] * psi;
  }
  return QuditState(d, alpha / std::sqrt(static_cast<double>(d)));
}

QuditUnitary dft_matrix(int d) {
  qubit_count(d);
  const auto roots = root_table(d);
  CMatrix m(d, d);
  for (int j = 0; j < d; ++j) {
    for (int k = 0; k < d; ++k) m(j, k) = roots[(j * k) % d];
  }
  return QuditUnitary(m / std::sqrt(static_cast<double>(d)), 1e-12);
}

PhaseCoefficients pinem_phase_coefficients(int d, int j) {
  PhaseCoefficients c{RVector(d), RVector(d)};
  for (int k = 0; k < d; ++k) {
    const double angle = kTwoPi * mod(static_cast<std::int64_t>(j) * k, d) / d;
    c.re(k) = 2.0 * std::sin(angle);
    c.im(k) = -2.0 * std::cos(angle);
  }
  return c;
}

RVector pinem_phases(const HarmonicDrive& drive, int d) {
  qubit_count(d);
  RVector p = RVector::Zero(d);
  for (const Harmonic& h : drive.terms()) {
    const PhaseCoefficients c = pinem_phase_coefficients(d, h.j);
    p += h.g.real() * c.re + h.g.imag() * c.im;
  }
  return p;
}

CVector pinem_eigenphases(const HarmonicDrive& drive, int d, EigenphaseMethod method) {
  qubit_count(d);
  if (method == EigenphaseMethod::kClosedForm) {
    const RVector p = pinem_phases(drive, d);
    CVector lambda(d);
    for (int k = 0; k < d; ++k) lambda(k) = std::polar(1.0, p(k));
    return lambda;
  }
  if (drive.empty()) return CVector::Ones(d);
  const auto roots = root_table(d);
  const PinemAmplitudes amps = pinem_amplitudes(drive, required_half_width(drive, 0));
  CVector lambda = CVector::Zero(d);
  for (int m = -amps.half_width; m <= amps.half_width; ++m) {
    const Complex f = amps.at(m);
    const int r = mod(m, d);
    for (int k = 0; k < d; ++k) lambda(k) += f * roots[(k * r) % d];
  }
  return lambda;
}

QuditUnitary pinem_qudit(const HarmonicDrive& drive, int d, EigenphaseMethod method) {
  return QuditUnitary(pinem_eigenphases(drive, d, method).asDiagonal());
}

CVector fsp_diagonal(int d, int steps) {
  qubit_count(d);
  if (steps < 0) throw std::invalid_argument("propagation steps must be non-negative");
  CVector diag(d);
  for (int k = 0; k < d; ++k) {
    // exp(-i pi n k^2 / d) has period 2d in n k^2.
    const int r = mod(static_cast<std::int64_t>(steps) * k * k, 2 * d);
    diag(k) = std::polar(1.0, -kPi * r / d);
  }
  return diag;
}

QuditUnitary fsp_qudit(const FspSteps& steps) {
  const QuditUnitary dft = dft_matrix(steps.dim);
  const CVector diag = fsp_diagonal(steps.dim, steps.steps);
  return QuditUnitary(dft.matrix().adjoint() * diag.asDiagonal() * dft.matrix());
}

std::vector<LadderState> decode_basis(int d, int half_width) {
  qubit_count(d);
  const int half = half_width > 0 ? half_width : d;
  if (half < d - 1) throw std::invalid_argument("decode basis needs half-width >= d-1");
  std::vector<LadderState> basis;
  basis.reserve(d);
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  for (int k = 0; k < d; ++k) {
    CVector a = CVector::Zero(2 * half + 1);
    for (int ell = 0; ell < d; ++ell) {
      a(half + ell) = std::conj(root_of_unity_power(d, static_cast<std::int64_t>(k) * ell)) * scale;
    }
    basis.emplace_back(half, std::move(a));
  }
  return basis;
}

CMatrix project_operator(const LadderOp& op, int d) {
  const auto basis = decode_basis(d, d + op_reach(op));
  CMatrix m(d, d);
  for (int k = 0; k < d; ++k) m.col(k) = encode(apply_op(basis[k], op), d).alpha;
  return m;
}

LadderState random_ladder_state(int half_width, int support, std::uint64_t seed) {
  if (support > half_width) throw std::invalid_argument("support exceeds the ladder window");
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> normal;
  CVector a = CVector::Zero(2 * half_width + 1);
  for (int ell = -support; ell <= support; ++ell) {
    a(half_width + ell) = Complex(normal(rng), normal(rng));
  }
  return LadderState::normalized(half_width, std::move(a));
}

ClosureResult closure_residual(const LadderOp& op, int d, const ClosureOptions& options) {
  qubit_count(d);
  const int support = options.support > 0 ? options.support : 2 * d;
  const int n_probe = options.n_probe > 0 ? options.n_probe : 2 * d;
  const int half = support + op_reach(op);

  CMatrix before(d, n_probe), after(d, n_probe);
  for (int i = 0; i < n_probe; ++i) {
    const LadderState psi = random_ladder_state(half, support, options.seed * 7919 + i);
    before.col(i) = encode(psi, d).alpha;
    after.col(i) = encode(apply_op(psi, op), d).alpha;
  }
  ClosureResult result;
  const CMatrix fit_t =
      before.transpose().completeOrthogonalDecomposition().solve(after.transpose());
  result.fit = fit_t.transpose();

  for (int i = 0; i < options.n_test; ++i) {
    const LadderState psi =
        random_ladder_state(half, support, options.seed * 7919 + n_probe + i);
    const CVector a = encode(psi, d).alpha;
    const CVector b = encode(apply_op(psi, op), d).alpha;
    result.residual = std::max(result.residual, (b - result.fit * a).norm());
  }
  return result;
}

}  // namespace fequdit
