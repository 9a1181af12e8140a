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

#include <gtest/gtest.h>

#include "fequdit/gates.hpp"

namespace fequdit {
namespace {

// lambda_k = exp(2i sum_j |g_j| sin(2 pi j k / d - arg g_j))
CVector closed_form_oracle(const HarmonicDrive& drive, int d) {
  CVector lambda(d);
  for (int k = 0; k < d; ++k) {
    double phase = 0.0;
    for (const Harmonic& h : drive.terms()) {
      phase += 2 * std::abs(h.g) * std::sin(kTwoPi * h.j * k / d - std::arg(h.g));
    }
    lambda(k) = std::exp(Complex(0, phase));
  }
  return lambda;
}

TEST(EncodeTest, MonoEnergeticIsUniform) {
  const QuditState q = encode(LadderState::mono_energetic(3), 4);
  for (int k = 0; k < 4; ++k) EXPECT_NEAR(std::abs(q.alpha(k) - 0.5), 0.0, 1e-15);
  EXPECT_NEAR(q.norm, 1.0, 1e-15);
}

TEST(EncodeTest, DecodeBasisRoundTrips) {
  for (int d : {2, 4, 8, 16}) {
    const auto basis = decode_basis(d, d + 3);
    for (int k = 0; k < d; ++k) {
      const QuditState q = encode(basis[k], d);
      EXPECT_LT((q.alpha - CVector::Unit(d, k)).norm(), 1e-13) << "d=" << d << " k=" << k;
    }
  }
  const auto basis = decode_basis(4);
  for (int ell = 0; ell < 4; ++ell) EXPECT_NEAR(std::norm(basis[0].at(ell)), 0.25, 1e-15);
}

TEST(EncodeTest, SeparatedRungsAlias) {
  // psi on rung l and l + d encode to the same qudit vector.
  CVector a = CVector::Zero(11), b = CVector::Zero(11);
  a(5 + 1) = 1.0;
  b(5 + 5) = 1.0;
  EXPECT_LT((encode(LadderState(5, a), 4).alpha - encode(LadderState(5, b), 4).alpha).norm(),
            1e-14);
}

TEST(EncodeTest, NotAnIsometryOffTheGateOrbit) {
  CVector v = CVector::Zero(11);
  v(5) = v(5 + 4) = 1 / std::sqrt(2.0);
  EXPECT_NEAR(encode(LadderState(5, v), 4).alpha.squaredNorm(), 2.0, 1e-14);
}

TEST(EncodeTest, SmallDimensions) {
  EXPECT_NEAR(std::abs(dft_matrix(1).matrix()(0, 0) - 1.0), 0.0, 1e-15);
  const LadderState k1 = decode_basis(2)[1];
  EXPECT_NEAR(std::abs(k1.at(0) - 1 / std::sqrt(2.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(k1.at(1) + 1 / std::sqrt(2.0)), 0.0, 1e-15);
  const CMatrix f4 = dft_matrix(4).matrix();
  CVector row(4);
  row << 1.0, -kI, -1.0, kI;
  EXPECT_LT((f4.row(1).transpose() - row / 2.0).norm(), 1e-15);
}

TEST(QuditUnitaryTest, Validates) {
  EXPECT_THROW(QuditUnitary(CMatrix::Identity(3, 3)), std::invalid_argument);
  EXPECT_THROW(QuditUnitary(2.0 * CMatrix::Identity(4, 4)), std::invalid_argument);
  EXPECT_THROW(QuditUnitary(CMatrix::Identity(4, 2)), std::invalid_argument);
  EXPECT_NO_THROW(QuditUnitary::identity(8));
}

TEST(DftTest, IsUnitaryWithNegativeRoot) {
  const CMatrix f = dft_matrix(4).matrix();
  EXPECT_NEAR(std::abs(f(1, 1) - Complex(0, -0.5)), 0.0, 1e-15);
  EXPECT_LT(max_abs(f * f.adjoint() - CMatrix::Identity(4, 4)), 1e-15);
}

TEST(FspQuditTest, OneStepAtFourMatchesCirculant) {
  const Complex a = std::exp(Complex(0, -kPi / 4)) / 2.0;
  const Complex b = 0.5;
  const Complex c = std::exp(Complex(0, 3 * kPi / 4)) / 2.0;
  CMatrix expected(4, 4);
  expected << a, b, c, b,
              b, a, b, c,
              c, b, a, b,
              b, c, b, a;
  EXPECT_LT(max_abs(fsp_qudit(FspSteps{1, 4}).matrix() - expected), 1e-12);
}

TEST(FspQuditTest, FullRevivalAndFractions) {
  for (int d : {2, 4, 8}) {
    EXPECT_LT(max_abs(fsp_qudit(FspSteps{2 * d, d}).matrix() - CMatrix::Identity(d, d)), 1e-12);
    const CMatrix one = fsp_qudit(FspSteps{1, d}).matrix();
    const CMatrix three = fsp_qudit(FspSteps{3, d}).matrix();
    EXPECT_LT(max_abs(one * one * one - three), 1e-12);
  }
  EXPECT_EQ(FspSteps::from_ratio(Rational(1, 8), 4).steps, 1);
  EXPECT_EQ(FspSteps::from_ratio(Rational(3, 4), 4).steps, 6);
  EXPECT_THROW(FspSteps::from_ratio(Rational(1, 12), 4), std::invalid_argument);
  EXPECT_THROW(FspSteps::from_ratio(Rational(-1, 8), 4), std::invalid_argument);
}

TEST(FspQuditTest, MatchesLadderPropagation) {
  for (int d : {2, 4, 8}) {
    for (int steps : {1, 2, 3}) {
      const CMatrix proj = project_operator(FspOp{Rational(steps, 2 * d)}, d);
      EXPECT_LT(max_abs(proj - fsp_qudit(FspSteps{steps, d}).matrix()), 1e-12);
    }
  }
}

TEST(PinemQuditTest, EigenphasesAgreeWithOracles) {
  for (int d : {2, 4, 8}) {
    std::vector<int> harmonics;
    for (int j = 1; j <= std::max(1, d / 2); ++j) harmonics.push_back(j);
    for (int s = 0; s < 10; ++s) {
      const HarmonicDrive drive = random_drive(harmonics, kPi, 100 + s);
      const CVector cs = pinem_eigenphases(drive, d, EigenphaseMethod::kCharacterSum);
      const CVector cf = pinem_eigenphases(drive, d, EigenphaseMethod::kClosedForm);
      EXPECT_LT((cs - closed_form_oracle(drive, d)).cwiseAbs().maxCoeff(), 1e-10);
      EXPECT_LT((cf - closed_form_oracle(drive, d)).cwiseAbs().maxCoeff(), 1e-12);
      const CMatrix proj = project_operator(PinemOp{drive}, d);
      CMatrix off = proj;
      off.diagonal().setZero();
      EXPECT_LT(max_abs(off), 1e-10);
      EXPECT_LT((proj.diagonal() - cs).cwiseAbs().maxCoeff(), 1e-10);
    }
  }
}

TEST(PinemQuditTest, PhasesFollowCoefficients) {
  const HarmonicDrive drive({{1, Complex(0.3, -0.2)}, {2, Complex(0.9, 0.4)}});
  const RVector p = pinem_phases(drive, 4);
  // d = 4: Re g2 drops out.
  EXPECT_NEAR(p(0), -2 * -0.2 - 2 * 0.4, 1e-15);
  EXPECT_NEAR(p(1), 2 * 0.3 + 2 * 0.4, 1e-15);
  EXPECT_NEAR(p(2), 2 * -0.2 - 2 * 0.4, 1e-15);
  EXPECT_NEAR(p(3), -2 * 0.3 + 2 * 0.4, 1e-15);
  const PhaseCoefficients c2 = pinem_phase_coefficients(4, 2);
  EXPECT_LT(c2.re.cwiseAbs().maxCoeff(), 1e-15);
}

TEST(PinemQuditTest, PhaseSpectrumOnlyAtDriveHarmonics) {
  const int d = 16;
  const HarmonicDrive drive({{3, Complex(0.4, 0.7)}, {5, Complex(-1.0, 0.2)}});
  const RVector p = pinem_phases(drive, d);
  for (int q = 0; q < d; ++q) {
    Complex c{};
    for (int k = 0; k < d; ++k) c += p(k) * std::exp(Complex(0, -kTwoPi * q * k / d));
    const bool allowed = q == 3 || q == 5 || q == d - 3 || q == d - 5;
    if (!allowed) EXPECT_LT(std::abs(c), 1e-12) << "q=" << q;
  }
  const CVector even = pinem_eigenphases(HarmonicDrive({{2, Complex(0.3, 0.8)}}), 4);
  EXPECT_NEAR(std::abs(even(0) - even(2)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(even(1) - even(3)), 0.0, 1e-15);
}

TEST(ClosureTest, Dichotomy) {
  ClosureOptions opts;
  opts.n_test = 20;
  for (int d : {2, 4, 8}) {
    const HarmonicDrive drive = random_drive({1, 2}, 2.0, 7 + d);
    EXPECT_LT(closure_residual(PinemOp{drive}, d, opts).residual, 1e-8);
    EXPECT_LT(closure_residual(FspOp{Rational(1, 2 * d)}, d, opts).residual, 1e-8);
    EXPECT_GT(closure_residual(FspOp{Rational(1, 3 * d)}, d, opts).residual, 1e-3);
  }
}

TEST(RandomStateTest, DeterministicAndNormalized) {
  const LadderState a = random_ladder_state(10, 4, 42);
  const LadderState b = random_ladder_state(10, 4, 42);
  EXPECT_EQ(a.amplitudes(), b.amplitudes());
  EXPECT_NEAR(a.norm(), 1.0, 1e-14);
  EXPECT_LE(a.support(), 4);
}

}  // namespace
}  // namespace fequdit
