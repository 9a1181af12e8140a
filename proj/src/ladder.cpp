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


#include "fequdit/ladder.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace fequdit {
namespace {

// Norm slack for states produced by gate application; PINEM may shed up
// to the truncation budget at the window edges.
constexpr double kEvolvedNormTolerance = 1e-9;

void require_window(const HarmonicDrive& drive, int half_width) {
  if (half_width < 1) throw std::invalid_argument("ladder half-width must be >= 1");
  if (half_width < drive.max_harmonic()) {
    std::ostringstream os;
    os << "ladder half-width " << half_width << " is smaller than harmonic "
       << drive.max_harmonic();
    throw std::invalid_argument(os.str());
  }
}

// out = A v for the band generator, without forming A.
void apply_generator(const HarmonicDrive& drive, const CVector& v, CVector& out) {
  const Eigen::Index n = v.size();
  out.setZero(n);
  for (const Harmonic& h : drive.terms()) {
    const Complex up = std::conj(h.g);
    const Complex down = -h.g;
    for (Eigen::Index i = 0; i + h.j < n; ++i) out(i) += up * v(i + h.j);
    for (Eigen::Index i = h.j; i < n; ++i) out(i) += down * v(i - h.j);
  }
}

}  // namespace

HarmonicDrive::HarmonicDrive(std::vector<Harmonic> terms) : terms_(std::move(terms)) {
  std::sort(terms_.begin(), terms_.end(),
            [](const Harmonic& a, const Harmonic& b) { return a.j < b.j; });
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (terms_[i].j <= 0) throw std::invalid_argument("harmonic index must be positive");
    if (i > 0 && terms_[i].j == terms_[i - 1].j) {
      throw std::invalid_argument("harmonic index " + std::to_string(terms_[i].j) + " repeated");
    }
  }
}

Complex HarmonicDrive::coupling(int j) const {
  for (const Harmonic& h : terms_) {
    if (h.j == j) return h.g;
  }
  return {};
}

HarmonicDrive operator+(const HarmonicDrive& a, const HarmonicDrive& b) {
  std::vector<Harmonic> terms = a.terms_;
  for (const Harmonic& h : b.terms_) {
    auto it = std::find_if(terms.begin(), terms.end(),
                           [&](const Harmonic& t) { return t.j == h.j; });
    if (it == terms.end()) {
      terms.push_back(h);
    } else {
      it->g += h.g;
    }
  }
  return HarmonicDrive(std::move(terms));
}

LadderState::LadderState(int half_width, CVector amplitudes, double norm_tolerance)
    : half_width_(half_width), amplitudes_(std::move(amplitudes)) {
  if (half_width_ < 1) throw std::invalid_argument("ladder half-width must be >= 1");
  if (amplitudes_.size() != 2 * half_width_ + 1) {
    throw std::invalid_argument("ladder amplitudes must have length 2L+1");
  }
  if (std::abs(amplitudes_.squaredNorm() - 1.0) > norm_tolerance) {
    std::ostringstream os;
    os << "ladder state is not normalized: sum |psi|^2 = " << amplitudes_.squaredNorm();
    throw std::invalid_argument(os.str());
  }
}

LadderState LadderState::normalized(int half_width, CVector amplitudes) {
  const double n = amplitudes.norm();
  if (n == 0.0) throw std::invalid_argument("cannot normalize a zero ladder state");
  amplitudes /= n;
  return LadderState(half_width, std::move(amplitudes));
}

LadderState LadderState::mono_energetic(int half_width) {
  CVector a = CVector::Zero(2 * half_width + 1);
  a(half_width) = 1.0;
  return LadderState(half_width, std::move(a));
}

Complex LadderState::at(int ell) const {
  return std::abs(ell) > half_width_ ? Complex{} : amplitudes_(half_width_ + ell);
}

double LadderState::edge_mass() const {
  return std::norm(amplitudes_(0)) + std::norm(amplitudes_(amplitudes_.size() - 1));
}

int LadderState::support(double tail) const {
  double outside = 0.0;
  for (int s = half_width_; s > 0; --s) {
    outside += std::norm(at(s)) + std::norm(at(-s));
    if (outside > tail) return s;
  }
  return 0;
}

LadderState LadderState::widened(int half_width) const {
  if (half_width < half_width_) throw std::invalid_argument("cannot narrow a ladder state");
  CVector a = CVector::Zero(2 * half_width + 1);
  a.segment(half_width - half_width_, amplitudes_.size()) = amplitudes_;
  return LadderState(half_width, std::move(a), kEvolvedNormTolerance);
}

PhysicalParams PhysicalParams::from_beta(double beta, double omega) {
  if (!(beta > 0.0 && beta < 1.0)) throw std::invalid_argument("beta must lie in (0, 1)");
  if (!(omega > 0.0)) throw std::invalid_argument("laser frequency must be positive");
  PhysicalParams p;
  p.beta = beta;
  p.lorentz_gamma = 1.0 / std::sqrt(1.0 - beta * beta);
  p.velocity = beta * kSpeedOfLight;
  p.omega = omega;
  return p;
}

PhysicalParams PhysicalParams::from_energies(double kinetic_energy_ev, double photon_energy_ev,
                                             std::optional<double> energy_spread_ev) {
  if (!(kinetic_energy_ev > 0.0)) throw std::invalid_argument("kinetic energy must be positive");
  if (!(photon_energy_ev > 0.0)) throw std::invalid_argument("photon energy must be positive");
  const double gamma = 1.0 + kinetic_energy_ev / kElectronRestEnergyEv;
  const double beta = std::sqrt(1.0 - 1.0 / (gamma * gamma));
  PhysicalParams p = from_beta(beta, photon_energy_ev / kHbarEvSeconds);
  p.kinetic_energy_ev = kinetic_energy_ev;
  p.energy_spread_ev = energy_spread_ev;
  return p;
}

double PhysicalParams::photon_energy_ev() const { return kHbarEvSeconds * omega; }

bool PhysicalParams::is_valid_regime() const {
  if (!kinetic_energy_ev || !energy_spread_ev) return false;
  const double photon = photon_energy_ev();
  return *kinetic_energy_ev / photon > 1e3 && photon / *energy_spread_ev > 1.0;
}

CMatrix pinem_generator(const HarmonicDrive& drive, int half_width) {
  require_window(drive, half_width);
  const int n = 2 * half_width + 1;
  CMatrix a = CMatrix::Zero(n, n);
  for (const Harmonic& h : drive.terms()) {
    for (int i = 0; i + h.j < n; ++i) {
      a(i, i + h.j) = std::conj(h.g);
      a(i + h.j, i) = -h.g;
    }
  }
  return a;
}

CMatrix pinem_unitary(const HarmonicDrive& drive, int half_width) {
  const CMatrix hermitian = kI * pinem_generator(drive, half_width);
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(hermitian);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eigendecomposition of the PINEM generator failed");
  }
  const CVector phases =
      (-kI * solver.eigenvalues().cast<Complex>()).array().exp().matrix();
  const CMatrix& v = solver.eigenvectors();
  return v * phases.asDiagonal() * v.adjoint();
}

PinemAmplitudes pinem_amplitudes(const HarmonicDrive& drive, int half_width, double budget) {
  require_window(drive, half_width);
  const int n = 2 * half_width + 1;
  CVector v = CVector::Zero(n);
  v(half_width) = 1.0;

  // exp(A) = exp(A/s)^s with |A/s| <= 1/2, each factor by Taylor series.
  double bound = 0.0;
  for (const Harmonic& h : drive.terms()) bound += 2.0 * std::abs(h.g);
  const int substeps = std::max(1, static_cast<int>(std::ceil(bound / 0.5)));
  const double scale = 1.0 / substeps;

  CVector term(n), next(n);
  for (int s = 0; s < substeps && !drive.empty(); ++s) {
    term = v;
    for (int k = 1; k < 64; ++k) {
      apply_generator(drive, term, next);
      term = next * (scale / k);
      v += term;
      if (term.norm() < 1e-18 * v.norm()) break;
    }
  }

  PinemAmplitudes out;
  out.half_width = half_width;
  out.edge_mass = std::norm(v(0)) + std::norm(v(n - 1));
  out.truncation_warning =
      out.edge_mass > budget || std::abs(v.squaredNorm() - 1.0) > budget;
  out.f = std::move(v);
  return out;
}

int required_half_width(const HarmonicDrive& drive, int support) {
  double reach = 0.0;
  for (const Harmonic& h : drive.terms()) reach += h.j * (2.0 * std::abs(h.g) + 20.0);
  return support + static_cast<int>(std::ceil(reach));
}

LadderState apply_pinem(const LadderState& state, const HarmonicDrive& drive, double budget) {
  if (drive.empty()) return state;
  const int width = required_half_width(drive, 0);
  const PinemAmplitudes amps = pinem_amplitudes(drive, width, budget);
  const int half = state.half_width();
  const int support = state.support();

  CVector out = CVector::Zero(state.size());
  for (int src = -support; src <= support; ++src) {
    const Complex psi = state.at(src);
    if (psi == Complex{}) continue;
    const int lo = std::max(-width, -half - src);
    const int hi = std::min(width, half - src);
    for (int m = lo; m <= hi; ++m) out(half + src + m) += amps.f(width + m) * psi;
  }

  const double leaked = state.amplitudes().squaredNorm() - out.squaredNorm();
  const double edge = std::norm(out(0)) + std::norm(out(out.size() - 1));
  if (leaked > budget || edge > budget) {
    const int required = support + width;
    std::ostringstream os;
    os << "PINEM drive leaves the ladder window (leaked " << leaked << ", edge mass " << edge
       << "); half-width " << half << " is too small, required L = " << required;
    throw TruncationError(os.str(), required);
  }
  return LadderState(half, std::move(out), kEvolvedNormTolerance);
}

double fsp_phase(const Rational& z_ratio, int ell) {
  const __int128 sq = static_cast<__int128>(ell) * ell;
  __int128 r = (static_cast<__int128>(z_ratio.num) * sq) % z_ratio.den;
  if (r < 0) r += z_ratio.den;
  return kTwoPi * static_cast<double>(r) / static_cast<double>(z_ratio.den);
}

LadderState apply_fsp(const LadderState& state, const Rational& z_ratio) {
  const int half = state.half_width();
  CVector out = state.amplitudes();
  for (int ell = -half; ell <= half; ++ell) {
    out(half + ell) *= std::polar(1.0, -fsp_phase(z_ratio, ell));
  }
  return LadderState(half, std::move(out), kEvolvedNormTolerance);
}

double z_dispersion(const PhysicalParams& params) {
  if (params.z_dispersion_override) return *params.z_dispersion_override;
  const double b = params.beta;
  const double g = params.lorentz_gamma;
  return 2.0 * b * b * g * g * g * params.omega_compton * params.velocity /
         (params.omega * params.omega);
}

RVector eels_spectrum(const LadderState& state) {
  return state.amplitudes().cwiseAbs2();
}

LadderState apply_op(const LadderState& state, const LadderOp& op, double budget) {
  if (const auto* p = std::get_if<PinemOp>(&op)) return apply_pinem(state, p->drive, budget);
  return apply_fsp(state, std::get<FspOp>(op).z_ratio);
}

int op_reach(const LadderOp& op) {
  if (const auto* p = std::get_if<PinemOp>(&op)) return required_half_width(p->drive, 0);
  return 0;
}

}  // namespace fequdit
