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


#include "fequdit/gates.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace fequdit {
namespace {

int bit_of(int index, int qubit, int n_qubits) { return (index >> (n_qubits - qubit)) & 1; }

double wrap_phase(double x) {
  double r = std::remainder(x, kTwoPi);
  if (r <= -kPi) r += kTwoPi;
  return r;
}

IdentityReport make_report(std::string name, std::string lhs, std::string rhs, double tolerance) {
  IdentityReport r;
  r.name = std::move(name);
  r.lhs = std::move(lhs);
  r.rhs = std::move(rhs);
  r.tolerance = tolerance;
  r.samples = 0;
  return r;
}

void record(IdentityReport& report, double residual) {
  report.residual = std::max(report.residual, residual);
  ++report.samples;
  report.passed = report.residual < report.tolerance;
}

CMatrix pinem(const HarmonicDrive& drive, int d) { return pinem_qudit(drive, d).matrix(); }
CMatrix fsp(int steps, int d) { return fsp_qudit(FspSteps{steps, d}).matrix(); }

}  // namespace

CMatrix identity(int dim) { return CMatrix::Identity(dim, dim); }

CMatrix hadamard() {
  CMatrix h(2, 2);
  h << 1, 1, 1, -1;
  return h / std::sqrt(2.0);
}

CMatrix pauli_x() {
  CMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

CMatrix pauli_y() {
  CMatrix m(2, 2);
  m << 0, -kI, kI, 0;
  return m;
}

CMatrix pauli_z() {
  CMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

CMatrix t_gate() {
  CMatrix m = CMatrix::Identity(2, 2);
  m(1, 1) = std::polar(1.0, kPi / 4);
  return m;
}

CMatrix rx(double theta) {
  return std::cos(theta / 2) * identity(2) - kI * std::sin(theta / 2) * pauli_x();
}

CMatrix ry(double theta) {
  return std::cos(theta / 2) * identity(2) - kI * std::sin(theta / 2) * pauli_y();
}

CMatrix rz(double theta) {
  return std::cos(theta / 2) * identity(2) - kI * std::sin(theta / 2) * pauli_z();
}

CMatrix cnot(int control, int target, int n_qubits) {
  if (control == target || control < 1 || target < 1 || control > n_qubits ||
      target > n_qubits) {
    throw std::invalid_argument("invalid CNOT qubits");
  }
  const int dim = 1 << n_qubits;
  CMatrix m = CMatrix::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) {
    const int flipped = bit_of(i, control, n_qubits) ? i ^ (1 << (n_qubits - target)) : i;
    m(flipped, i) = 1.0;
  }
  return m;
}

CMatrix swap_gate(int a, int b, int n_qubits) {
  if (a == b || a < 1 || b < 1 || a > n_qubits || b > n_qubits) {
    throw std::invalid_argument("invalid SWAP qubits");
  }
  const int dim = 1 << n_qubits;
  CMatrix m = CMatrix::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) {
    int j = i;
    if (bit_of(i, a, n_qubits) != bit_of(i, b, n_qubits)) {
      j ^= (1 << (n_qubits - a)) | (1 << (n_qubits - b));
    }
    m(j, i) = 1.0;
  }
  return m;
}

CVector bell_state(int x, int y) {
  CVector v = CVector::Zero(4);
  v(y) = 1.0;
  v(2 + (1 - y)) = x ? -1.0 : 1.0;
  return v / std::sqrt(2.0);
}

CMatrix bell_projector(int x, int y) {
  const CVector b = bell_state(x, y);
  return b * b.adjoint();
}

std::map<std::string, CMatrix> gate_zoo(double angle) {
  return {
      {"H", hadamard()},
      {"X", pauli_x()},
      {"Y", pauli_y()},
      {"Z", pauli_z()},
      {"T", t_gate()},
      {"Rx", rx(angle)},
      {"Ry", ry(angle)},
      {"Rz", rz(angle)},
      {"CNOT12", cnot(1, 2)},
      {"CNOT21", cnot(2, 1)},
      {"SWAP", swap_gate(1, 2)},
      {"Bell00", bell_projector(0, 0)},
      {"Bell01", bell_projector(0, 1)},
      {"Bell10", bell_projector(1, 0)},
      {"Bell11", bell_projector(1, 1)},
  };
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

CMatrix embed(const CMatrix& u, int position, int n_qubits) {
  const int span = qubit_count(static_cast<int>(u.rows()));
  if (u.rows() != u.cols() || position < 1 || position + span - 1 > n_qubits) {
    throw std::invalid_argument("gate does not fit at the requested qubit position");
  }
  return kron(kron(identity(1 << (position - 1)), u),
              identity(1 << (n_qubits - position - span + 1)));
}

double phase_dist(const CMatrix& u, const CMatrix& v) {
  if (u.rows() != v.rows() || u.cols() != v.cols()) {
    throw std::invalid_argument("phase_dist of differently sized matrices");
  }
  const double overlap = std::abs((v.adjoint() * u).trace()) / static_cast<double>(u.rows());
  return std::clamp(1.0 - overlap, 0.0, 1.0);
}

double phase_dist(const QuditUnitary& u, const QuditUnitary& v) {
  return phase_dist(u.matrix(), v.matrix());
}

double global_phase_residual(const CMatrix& lhs, const CMatrix& rhs) {
  Complex overlap = (rhs.adjoint() * lhs).trace();
  if (std::abs(overlap) < 1e-300) overlap = 1.0;
  const Complex phase = overlap / std::abs(overlap);
  return max_abs(lhs - phase * rhs);
}

double state_fidelity(const CVector& state, const CVector& target) {
  return std::norm(target.dot(state));
}

std::array<double, 3> bloch_vector(const CVector& alpha, int qubit) {
  const int dim = static_cast<int>(alpha.size());
  const int n = qubit_count(dim);
  if (qubit < 1 || qubit > n) throw std::invalid_argument("qubit index out of range");
  if (std::abs(alpha.norm() - 1.0) > 1e-8) {
    throw std::invalid_argument("Bloch vector requires a normalized qudit state");
  }
  const int mask = 1 << (n - qubit);
  Complex rho00{}, rho11{}, rho01{};
  for (int i = 0; i < dim; ++i) {
    if (i & mask) continue;
    const Complex a0 = alpha(i);
    const Complex a1 = alpha(i | mask);
    rho00 += std::norm(a0);
    rho11 += std::norm(a1);
    rho01 += a0 * std::conj(a1);
  }
  return {2.0 * rho01.real(), -2.0 * rho01.imag(), (rho00 - rho11).real()};
}

std::array<double, 3> bloch_vector(const QuditState& state, int qubit) {
  return bloch_vector(state.alpha, qubit);
}

HarmonicDrive random_drive(const std::vector<int>& harmonics, double max_coupling,
                           std::uint64_t seed) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    0x5eedu};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> mag(0.0, max_coupling);
  std::uniform_real_distribution<double> arg(-kPi, kPi);
  std::vector<Harmonic> terms;
  for (int j : harmonics) terms.push_back({j, std::polar(mag(rng), arg(rng))});
  return HarmonicDrive(std::move(terms));
}

std::vector<IdentityReport> results_suite(const SweepOptions& options) {
  const double tol = options.tolerance;
  const CMatrix i2 = identity(2);
  IdentityReport ia = make_report("pinem 4->2, second harmonic", "PINEM_4(g1=0, g2)", "I2 x PINEM_2(g2)", tol);
  IdentityReport ib =
      make_report("pinem 4->2, first harmonic", "PINEM_4(g1=|g1|e^{-i pi/4}, g2=0)", "PINEM_2(i Im g1) x I2", tol);
  IdentityReport ii = make_report("fsp 4->2", "FSP_4(z_D/8)^2", "FSP_2(z_D/4) x I2", tol);
  IdentityReport iii =
      make_report("pinem 8->4, even harmonics", "PINEM_8(g1=0, g2, g4)", "I2 x PINEM_4(g2, g4)", tol);
  IdentityReport iv = make_report("fsp 8->4", "FSP_8(z_D/16)^2", "FSP_4(z_D/8) x I2", tol);
  IdentityReport v = make_report("pinem 8->2, fourth harmonic", "PINEM_8(g1=0, g2=0, g4)", "I2 x I2 x PINEM_2(g4)", tol);
  IdentityReport vi = make_report("fsp 8->2", "FSP_8(z_D/16)^4", "FSP_2(z_D/4) x I2 x I2", tol);

  // Propagation identities carry no couplings; one evaluation each.
  record(ii, global_phase_residual(fsp(2, 4), kron(fsp(1, 2), i2)));
  record(iv, global_phase_residual(fsp(2, 8), kron(fsp(1, 4), i2)));
  record(vi, global_phase_residual(fsp(4, 8), kron(fsp(1, 2), identity(4))));

  double positive_orientation = 0.0;
  for (int s = 0; s < options.samples; ++s) {
    const std::uint64_t seed = options.seed * 1000003ull + static_cast<std::uint64_t>(s);
    const HarmonicDrive d24 = random_drive({2, 4}, options.max_coupling, seed);
    const Complex g2 = d24.coupling(2);
    const Complex g4 = d24.coupling(4);

    record(ia, global_phase_residual(pinem(HarmonicDrive({{2, g2}}), 4),
                                     kron(i2, pinem(HarmonicDrive({{1, g2}}), 2))));

    const double mag = std::abs(g2);
    const Complex g1 = std::polar(mag, -kPi / 4);
    record(ib, global_phase_residual(pinem(HarmonicDrive({{1, g1}}), 4),
                                     kron(pinem(HarmonicDrive({{1, kI * g1.imag()}}), 2), i2)));
    const Complex g1_positive = std::polar(mag, kPi / 4);
    positive_orientation = std::max(
        positive_orientation,
        global_phase_residual(pinem(HarmonicDrive({{1, g1_positive}}), 4),
                              kron(pinem(HarmonicDrive({{1, kI * g1_positive.imag()}}), 2), i2)));

    record(iii, global_phase_residual(pinem(d24, 8),
                                      kron(i2, pinem(HarmonicDrive({{1, g2}, {2, g4}}), 4))));
    record(v, global_phase_residual(pinem(HarmonicDrive({{4, g4}}), 8),
                                    kron(identity(4), pinem(HarmonicDrive({{1, g4}}), 2))));
  }
  std::ostringstream note;
  note << "factorizes for arg g1 = -pi/4 with the band generator's orientation; "
          "arg g1 = +pi/4 leaves a ZZ-type phase, worst residual "
       << positive_orientation;
  ib.note = note.str();
  return {ia, ib, ii, iii, iv, v, vi};
}

PhaseSolveResult phase_gate_solve(const RVector& target_phases, int n_harmonics) {
  const int d = static_cast<int>(target_phases.size());
  qubit_count(d);
  if (n_harmonics < 0) throw std::invalid_argument("harmonic count must be non-negative");

  // Columns: global phase, then every non-inert (Re g_j, Im g_j).
  struct Column {
    int j;
    bool real_part;
  };
  std::vector<Column> columns;
  std::vector<RVector> values;
  values.push_back(RVector::Ones(d));
  columns.push_back({0, false});
  for (int j = 1; j <= n_harmonics; ++j) {
    const PhaseCoefficients c = pinem_phase_coefficients(d, j);
    if (c.re.cwiseAbs().maxCoeff() > 1e-12) {
      columns.push_back({j, true});
      values.push_back(c.re);
    }
    if (c.im.cwiseAbs().maxCoeff() > 1e-12) {
      columns.push_back({j, false});
      values.push_back(c.im);
    }
  }
  RMatrix basis(d, static_cast<Eigen::Index>(values.size()));
  for (std::size_t c = 0; c < values.size(); ++c) basis.col(c) = values[c];
  const auto solver = basis.completeOrthogonalDecomposition();

  RVector target = target_phases.unaryExpr([](double x) { return wrap_phase(x); });
  RVector x = solver.solve(target);
  for (int iter = 0; iter < 20; ++iter) {
    // Move each target by the 2 pi multiple that the fit residual points at.
    const RVector r = target - basis * x;
    const RVector shift = r - r.unaryExpr([](double v) { return wrap_phase(v); });
    if (shift.cwiseAbs().maxCoeff() < 1e-9) break;
    target -= shift;
    x = solver.solve(target);
  }

  std::vector<Harmonic> terms;
  for (int j = 1; j <= n_harmonics; ++j) {
    Complex g{};
    for (std::size_t c = 1; c < columns.size(); ++c) {
      if (columns[c].j != j) continue;
      if (columns[c].real_part) {
        g += x(c);
      } else {
        g += kI * x(c);
      }
    }
    terms.push_back({j, g});
  }

  PhaseSolveResult result;
  result.drive = HarmonicDrive(std::move(terms));
  result.exact = solver.rank() == d;
  const RVector achieved = pinem_phases(result.drive, d);
  Complex overlap{};
  for (int k = 0; k < d; ++k) overlap += std::polar(1.0, achieved(k) - target_phases(k));
  result.residual = std::clamp(1.0 - std::abs(overlap) / d, 0.0, 1.0);
  return result;
}

std::pair<IdentityReport, IdentityReport> conjecture1_check(int n, int k,
                                                            const SweepOptions& options) {
  if (n < 1 || k < 0 || k > n - 1) throw std::invalid_argument("need 0 <= k <= n-1");
  const int d = 1 << n;
  const int reduced = d >> k;
  const int block = 1 << k;

  std::ostringstream ln, rn;
  ln << "PINEM_" << d << "(harmonics j*" << block << ")";
  rn << "I2^" << k << " x PINEM_" << reduced << "(harmonics j)";
  IdentityReport p = make_report("conjecture1 PINEM n=" + std::to_string(n) +
                                     " k=" + std::to_string(k),
                                 ln.str(), rn.str(), options.tolerance);
  std::ostringstream lf, rf;
  lf << "FSP_" << d << "(" << block << " steps)";
  rf << "FSP_" << reduced << "(1 step) x I2^" << k;
  IdentityReport f = make_report("conjecture1 FSP n=" + std::to_string(n) +
                                     " k=" + std::to_string(k),
                                 lf.str(), rf.str(), options.tolerance);

  record(f, global_phase_residual(fsp(block, d), kron(fsp(1, reduced), identity(block))));

  std::vector<int> small;
  for (int j = 1; j <= std::max(1, reduced / 2); ++j) small.push_back(j);
  for (int s = 0; s < options.samples; ++s) {
    const HarmonicDrive base =
        random_drive(small, options.max_coupling, options.seed * 7777ull + s);
    std::vector<Harmonic> scaled;
    for (const Harmonic& h : base.terms()) scaled.push_back({h.j * block, h.g});
    record(p, global_phase_residual(pinem(HarmonicDrive(scaled), d),
                                    kron(identity(block), pinem(base, reduced))));
  }
  return {p, f};
}

PhaseSweepReport conjecture2_sweep(int d, int n_harmonics, const SweepOptions& options,
                                   double threshold) {
  PhaseSweepReport report;
  report.dim = d;
  report.n_harmonics = n_harmonics;
  report.threshold = threshold;
  report.histogram.assign(16, 0);
  std::seed_seq seq{static_cast<std::uint32_t>(options.seed), 0xc0u};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> phase(-kPi, kPi);
  for (int s = 0; s < options.samples; ++s) {
    RVector target(d);
    for (int k = 0; k < d; ++k) target(k) = phase(rng);
    const PhaseSolveResult solved = phase_gate_solve(target, n_harmonics);
    ++report.samples;
    if (solved.residual < threshold) ++report.successes;
    report.worst_residual = std::max(report.worst_residual, solved.residual);
    int bin = 0;
    while (bin < 15 && solved.residual >= std::pow(10.0, -15 + bin)) ++bin;
    ++report.histogram[bin];
  }
  return report;
}

}  // namespace fequdit
