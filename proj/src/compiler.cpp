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

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <sstream>
#include <thread>

#include "fequdit/optimize.hpp"

namespace fequdit {
namespace {

GateSchedule single_pinem(int d, HarmonicDrive drive) {
  GateSchedule s;
  s.dim = d;
  s.steps.push_back(PinemStep{std::move(drive)});
  return s;
}

std::vector<std::vector<int>> enumerate_patterns(const CompileTemplate& tmpl) {
  const int gaps = std::max(0, tmpl.n_pinem - 1);
  if (tmpl.fsp_pattern) {
    if (static_cast<int>(tmpl.fsp_pattern->size()) != gaps) {
      throw std::invalid_argument("propagation pattern needs one entry per PINEM gap");
    }
    return {*tmpl.fsp_pattern};
  }
  if (gaps > 0 && tmpl.fsp_step_set.empty()) {
    throw std::invalid_argument("empty propagation step set");
  }
  std::vector<std::vector<int>> out;
  std::vector<std::size_t> digits(gaps, 0);
  while (true) {
    std::vector<int> pattern(gaps);
    for (int g = 0; g < gaps; ++g) pattern[g] = tmpl.fsp_step_set[digits[g]];
    out.push_back(std::move(pattern));
    if (tmpl.max_patterns > 0 && static_cast<int>(out.size()) >= tmpl.max_patterns) break;
    int pos = gaps - 1;
    while (pos >= 0 && ++digits[pos] == tmpl.fsp_step_set.size()) digits[pos--] = 0;
    if (pos < 0) break;
  }
  return out;
}

struct StartOutcome {
  RVector x;
  double infidelity = 1.0;
  int iterations = 0;
};

double wrap_half_pi(double x) { return x - kPi * std::round(x / kPi); }

}  // namespace

int GateSchedule::pinem_count() const {
  return static_cast<int>(std::count_if(steps.begin(), steps.end(), [](const ScheduleStep& s) {
    return std::holds_alternative<PinemStep>(s);
  }));
}

GateSchedule GateSchedule::simplified() const {
  GateSchedule out;
  out.dim = dim;
  for (const ScheduleStep& step : steps) {
    if (const auto* f = std::get_if<FspStep>(&step)) {
      if (f->steps == 0) continue;
      if (!out.steps.empty()) {
        if (auto* prev = std::get_if<FspStep>(&out.steps.back())) {
          prev->steps += f->steps;
          continue;
        }
      }
    } else if (!out.steps.empty()) {
      if (auto* prev = std::get_if<PinemStep>(&out.steps.back())) {
        prev->drive = prev->drive + std::get<PinemStep>(step).drive;
        continue;
      }
    }
    out.steps.push_back(step);
  }
  return out;
}

GateSchedule GateSchedule::then(const GateSchedule& next) const {
  if (next.dim != dim) throw std::invalid_argument("schedules act on different dimensions");
  GateSchedule joined = *this;
  joined.steps.insert(joined.steps.end(), next.steps.begin(), next.steps.end());
  return joined.simplified();
}

QuditUnitary schedule_unitary(const GateSchedule& schedule, EigenphaseMethod method) {
  const int d = schedule.dim;
  CMatrix u = CMatrix::Identity(d, d);
  for (const ScheduleStep& step : schedule.steps) {
    if (const auto* p = std::get_if<PinemStep>(&step)) {
      u = pinem_eigenphases(p->drive, d, method).asDiagonal() * u;
    } else {
      u = fsp_qudit(FspSteps{std::get<FspStep>(step).steps, d}).matrix() * u;
    }
  }
  return QuditUnitary(std::move(u));
}

int schedule_half_width(const GateSchedule& schedule, int support) {
  int half = std::max(support, 1);
  for (const ScheduleStep& step : schedule.steps) {
    if (const auto* p = std::get_if<PinemStep>(&step)) half += required_half_width(p->drive, 0);
  }
  return half;
}

LadderState apply_schedule(const LadderState& state, const GateSchedule& schedule,
                           double budget) {
  LadderState current = state;
  for (const ScheduleStep& step : schedule.steps) {
    if (const auto* p = std::get_if<PinemStep>(&step)) {
      current = apply_pinem(current, p->drive, budget);
    } else {
      current = apply_fsp(current, Rational(std::get<FspStep>(step).steps, 2 * schedule.dim));
    }
  }
  return current;
}

double cross_level_residual(const GateSchedule& schedule) {
  const int d = schedule.dim;
  const CMatrix u = schedule_unitary(schedule).matrix();
  const auto basis = decode_basis(d, schedule_half_width(schedule, d));
  double worst = 0.0;
  for (int k = 0; k < d; ++k) {
    const CVector alpha = encode(apply_schedule(basis[k], schedule), d).alpha;
    worst = std::max(worst, (alpha - u.col(k)).norm());
  }
  return worst;
}

std::vector<int> default_harmonics(int d) {
  qubit_count(d);
  if (d == 4) return {1, 2};
  std::vector<int> h;
  for (int j = 1; j <= std::max(1, d / 2); ++j) h.push_back(j);
  return h;
}

ScheduleObjective::ScheduleObjective(const QuditUnitary& target, std::vector<int> harmonics,
                                     std::vector<int> fsp_pattern)
    : dim_(target.dim()),
      n_pinem_(static_cast<int>(fsp_pattern.size()) + 1),
      target_adjoint_(target.matrix().adjoint()),
      harmonics_(std::move(harmonics)),
      pattern_(std::move(fsp_pattern)) {
  for (int steps : pattern_) propagators_.push_back(fsp_qudit(FspSteps{steps, dim_}).matrix());
  const auto periodic = [](const RVector& c) {
    return (c.array().abs() < 1e-12 || (c.array().abs() - 2.0).abs() < 1e-12).all();
  };
  for (int j : harmonics_) {
    const PhaseCoefficients c = pinem_phase_coefficients(dim_, j);
    if (c.re.cwiseAbs().maxCoeff() > 1e-12) columns_.push_back({j, true, c.re, periodic(c.re)});
    if (c.im.cwiseAbs().maxCoeff() > 1e-12) columns_.push_back({j, false, c.im, periodic(c.im)});
  }
}

double ScheduleObjective::operator()(const RVector& x, RVector* gradient) const {
  const int d = dim_;
  const int ncol = static_cast<int>(columns_.size());
  std::vector<CVector> diag(n_pinem_);
  for (int i = 0; i < n_pinem_; ++i) {
    RVector p = RVector::Zero(d);
    for (int c = 0; c < ncol; ++c) p += x(i * ncol + c) * columns_[c].coefficients;
    diag[i] = (kI * p.cast<Complex>()).array().exp().matrix();
  }

  // before[i]: everything applied ahead of PINEM i.
  std::vector<CMatrix> before(n_pinem_);
  before[0] = CMatrix::Identity(d, d);
  for (int i = 1; i < n_pinem_; ++i) {
    before[i] = propagators_[i - 1] * (diag[i - 1].asDiagonal() * before[i - 1]);
  }
  const CMatrix u = diag[n_pinem_ - 1].asDiagonal() * before[n_pinem_ - 1];
  const Complex t = (target_adjoint_ * u).trace();
  const double d2 = static_cast<double>(d) * d;
  const double value = 1.0 - std::norm(t) / d2;
  if (gradient == nullptr) return value;

  gradient->setZero(parameter_count());
  CMatrix after = CMatrix::Identity(d, d);  // everything applied after PINEM i
  for (int i = n_pinem_ - 1; i >= 0; --i) {
    const CMatrix g = target_adjoint_ * after;
    // dt/dx_c = i sum_k coef_c[k] D_k (before_i V^dag after_i)_kk
    const CVector w =
        (before[i].array() * g.transpose().array()).rowwise().sum().matrix().cwiseProduct(diag[i]);
    for (int c = 0; c < ncol; ++c) {
      Complex sum{};
      for (int k = 0; k < d; ++k) sum += columns_[c].coefficients(k) * w(k);
      (*gradient)(i * ncol + c) = -2.0 * (std::conj(t) * (kI * sum)).real() / d2;
    }
    if (i > 0) after = after * diag[i].asDiagonal() * propagators_[i - 1];
  }
  return value;
}

GateSchedule ScheduleObjective::schedule(const RVector& x) const {
  const int ncol = static_cast<int>(columns_.size());
  GateSchedule s;
  s.dim = dim_;
  for (int i = 0; i < n_pinem_; ++i) {
    std::vector<Harmonic> terms;
    for (int j : harmonics_) {
      Complex g{};
      for (int c = 0; c < ncol; ++c) {
        if (columns_[c].j != j) continue;
        if (columns_[c].real_part) {
          g += x(i * ncol + c);
        } else {
          g += kI * x(i * ncol + c);
        }
      }
      terms.push_back({j, g});
    }
    s.steps.push_back(PinemStep{HarmonicDrive(std::move(terms))});
    if (i + 1 < n_pinem_) s.steps.push_back(FspStep{pattern_[i]});
  }
  return s;
}

RVector ScheduleObjective::canonicalize(RVector x) const {
  const int ncol = static_cast<int>(columns_.size());
  for (int i = 0; i < n_pinem_; ++i) {
    for (int c = 0; c < ncol; ++c) {
      if (columns_[c].pi_periodic) x(i * ncol + c) = wrap_half_pi(x(i * ncol + c));
    }
  }
  return x;
}

CompileReport compile(const QuditUnitary& target, const CompileTemplate& tmpl,
                      const CompileOptions& options) {
  const auto t0 = std::chrono::steady_clock::now();
  const int d = target.dim();
  CompileReport report;
  report.rng_seed = options.seed;
  report.schedule.dim = d;

  if (tmpl.n_pinem < 0) throw std::invalid_argument("negative PINEM count");
  if (tmpl.n_pinem == 0) {
    report.infidelity = phase_dist(QuditUnitary::identity(d), target);
    report.converged = report.infidelity < options.threshold;
    report.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
  }

  const std::vector<int> harmonics = tmpl.harmonics.empty() ? default_harmonics(d) : tmpl.harmonics;
  for (int j : harmonics) {
    if (j < 1) throw std::invalid_argument("harmonic index must be positive");
  }
  const auto patterns = enumerate_patterns(tmpl);
  const int n_threads = options.n_threads > 0
                            ? options.n_threads
                            : std::max(1u, std::thread::hardware_concurrency());

  MinimizeOptions mopts;
  mopts.max_iterations = options.max_iterations;
  mopts.target_value = 1e-3 * options.threshold;

  bool have_best = false;
  for (std::size_t pi = 0; pi < patterns.size() && !report.converged; ++pi) {
    ++report.n_patterns;
    const ScheduleObjective objective(target, harmonics, patterns[pi]);

    const auto run_start = [&](int start) {
      std::seed_seq seq{static_cast<std::uint32_t>(options.seed),
                        static_cast<std::uint32_t>(options.seed >> 32),
                        static_cast<std::uint32_t>(pi), static_cast<std::uint32_t>(start)};
      std::mt19937_64 rng(seq);
      std::uniform_real_distribution<double> uniform(-kPi / 2, kPi / 2);
      RVector x0(objective.parameter_count());
      for (Eigen::Index i = 0; i < x0.size(); ++i) x0(i) = uniform(rng);
      const MinimizeResult m = minimize_bfgs(
          [&objective](const RVector& x, RVector* g) { return objective(x, g); }, x0, mopts);
      StartOutcome out;
      out.x = objective.canonicalize(m.x);
      out.iterations = m.iterations;
      out.infidelity = phase_dist(schedule_unitary(objective.schedule(out.x)), target);
      return out;
    };

    for (int first = 0; first < options.n_starts && !report.converged; first += n_threads) {
      const int batch = std::min(n_threads, options.n_starts - first);
      std::vector<StartOutcome> outcomes(batch);
      if (batch == 1) {
        outcomes[0] = run_start(first);
      } else {
        std::vector<std::thread> workers;
        for (int b = 0; b < batch; ++b) {
          workers.emplace_back([&, b] { outcomes[b] = run_start(first + b); });
        }
        for (auto& w : workers) w.join();
      }
      // Consume in start order so the outcome matches a sequential run.
      for (int b = 0; b < batch; ++b) {
        ++report.n_starts;
        report.n_iterations += outcomes[b].iterations;
        if (!have_best || outcomes[b].infidelity < report.infidelity) {
          have_best = true;
          report.infidelity = outcomes[b].infidelity;
          report.schedule = objective.schedule(outcomes[b].x);
        }
        if (outcomes[b].infidelity < options.threshold) {
          report.converged = true;
          break;
        }
      }
    }
  }
  report.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

NamedGate parse_named_gate(const std::string& name) {
  if (name == "hadamard_1" || name == "h1") return NamedGate::kHadamard1;
  if (name == "hadamard_2" || name == "h2") return NamedGate::kHadamard2;
  if (name == "cnot_21" || name == "cnot21") return NamedGate::kCnot21;
  if (name == "cnot_12" || name == "cnot12") return NamedGate::kCnot12;
  if (name == "swap") return NamedGate::kSwap;
  if (name == "rz_pair" || name == "rz") return NamedGate::kRzPair;
  if (name == "rx_1" || name == "rx") return NamedGate::kRx1;
  throw std::invalid_argument("unknown gate '" + name + "'");
}

std::string named_gate_name(NamedGate gate) {
  switch (gate) {
    case NamedGate::kHadamard1: return "hadamard_1";
    case NamedGate::kHadamard2: return "hadamard_2";
    case NamedGate::kCnot21: return "cnot_21";
    case NamedGate::kCnot12: return "cnot_12";
    case NamedGate::kSwap: return "swap";
    case NamedGate::kRzPair: return "rz_pair";
    case NamedGate::kRx1: return "rx_1";
  }
  return "unknown";
}

int named_gate_budget(NamedGate gate) {
  switch (gate) {
    case NamedGate::kHadamard1: return 2;
    case NamedGate::kHadamard2: return 14;  // SWAP . H_1 . SWAP
    case NamedGate::kCnot21: return 3;
    case NamedGate::kCnot12: return 15;     // SWAP . CNOT_{2->1} . SWAP
    case NamedGate::kSwap: return 6;
    case NamedGate::kRzPair: return 1;
    case NamedGate::kRx1: return 5;         // H_1 . Rz_1 . H_1
  }
  return 0;
}

QuditUnitary named_gate_target(NamedGate gate, const std::vector<double>& angles) {
  const auto angle = [&](std::size_t i, double fallback) {
    return i < angles.size() ? angles[i] : fallback;
  };
  switch (gate) {
    case NamedGate::kHadamard1: return QuditUnitary(embed(hadamard(), 1, 2));
    case NamedGate::kHadamard2: return QuditUnitary(embed(hadamard(), 2, 2));
    case NamedGate::kCnot21: return QuditUnitary(cnot(2, 1));
    case NamedGate::kCnot12: return QuditUnitary(cnot(1, 2));
    case NamedGate::kSwap: return QuditUnitary(swap_gate(1, 2));
    case NamedGate::kRzPair:
      return QuditUnitary(kron(rz(angle(0, kPi / 2)), rz(angle(1, -kPi / 2))));
    case NamedGate::kRx1: return QuditUnitary(embed(rx(angle(0, kPi / 4)), 1, 2));
  }
  throw std::invalid_argument("unknown gate");
}

namespace {

CompileReport finish_composed(NamedGate gate, const std::vector<double>& angles,
                              GateSchedule schedule, const std::vector<CompileReport>& parts,
                              const CompileOptions& options,
                              std::chrono::steady_clock::time_point t0) {
  CompileReport report;
  report.target_name = named_gate_name(gate);
  report.schedule = std::move(schedule);
  report.rng_seed = options.seed;
  for (const CompileReport& p : parts) {
    report.n_starts += p.n_starts;
    report.n_iterations += p.n_iterations;
    report.n_patterns += p.n_patterns;
  }
  report.infidelity =
      phase_dist(schedule_unitary(report.schedule), named_gate_target(gate, angles));
  report.converged = report.infidelity < options.threshold;
  report.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

GateSchedule rz_schedule(const QuditUnitary& diagonal_target) {
  const CVector diag = diagonal_target.matrix().diagonal();
  RVector phases(diag.size());
  for (Eigen::Index k = 0; k < diag.size(); ++k) phases(k) = std::arg(diag(k));
  const int d = diagonal_target.dim();
  const PhaseSolveResult solved = phase_gate_solve(phases, d == 4 ? 2 : d / 2);
  return single_pinem(d, solved.drive);
}

}  // namespace

CompileReport compile_named(NamedGate gate, const std::vector<double>& angles,
                            const CompileOptions& options) {
  const auto t0 = std::chrono::steady_clock::now();
  const QuditUnitary target = named_gate_target(gate, angles);
  CompileTemplate tmpl;
  switch (gate) {
    case NamedGate::kHadamard1:
      tmpl.n_pinem = 2;
      break;
    case NamedGate::kHadamard2: {
      tmpl.n_pinem = 4;
      CompileReport direct = compile(target, tmpl, options);
      direct.target_name = named_gate_name(gate);
      if (direct.converged) return direct;
      const CompileReport swap = compile_named(NamedGate::kSwap, {}, options);
      const CompileReport h1 = compile_named(NamedGate::kHadamard1, {}, options);
      return finish_composed(gate, angles, swap.schedule.then(h1.schedule).then(swap.schedule),
                             {direct, swap, h1}, options, t0);
    }
    case NamedGate::kCnot21:
      tmpl.n_pinem = 3;
      break;
    case NamedGate::kSwap:
      tmpl.n_pinem = 6;
      break;
    case NamedGate::kCnot12: {
      const CompileReport swap = compile_named(NamedGate::kSwap, {}, options);
      const CompileReport cx = compile_named(NamedGate::kCnot21, {}, options);
      return finish_composed(gate, angles, swap.schedule.then(cx.schedule).then(swap.schedule),
                             {swap, cx}, options, t0);
    }
    case NamedGate::kRzPair:
      return finish_composed(gate, angles, rz_schedule(target), {}, options, t0);
    case NamedGate::kRx1: {
      // Rx(theta) = H Rz(theta) H on qubit 1.
      const double theta = angles.empty() ? kPi / 4 : angles[0];
      const CompileReport h1 = compile_named(NamedGate::kHadamard1, {}, options);
      const GateSchedule rz1 = rz_schedule(QuditUnitary(embed(rz(theta), 1, 2)));
      return finish_composed(gate, {theta}, h1.schedule.then(rz1).then(h1.schedule), {h1},
                             options, t0);
    }
  }
  CompileReport report = compile(target, tmpl, options);
  report.target_name = named_gate_name(gate);
  return report;
}

BellResult bell_program(const CompileOptions& options) {
  const CompileReport h2 = compile_named(NamedGate::kHadamard2, {}, options);
  const CompileReport cx = compile_named(NamedGate::kCnot21, {}, options);

  BellResult result;
  result.schedule = h2.schedule.then(cx.schedule);
  const int half = schedule_half_width(result.schedule, 4);
  const LadderState start = decode_basis(4, half)[0];
  const LadderState mid = apply_schedule(start, h2.schedule);
  const LadderState end = apply_schedule(mid, cx.schedule);

  result.after_hadamard = encode(mid, 4);
  result.state = encode(end, 4);
  CVector plus = CVector::Zero(4);
  plus(0) = plus(1) = 1.0 / std::sqrt(2.0);
  result.intermediate_fidelity = state_fidelity(result.after_hadamard.normalized(), plus);
  result.fidelity = state_fidelity(result.state.normalized(), bell_state(0, 0));
  result.bloch_q1 = bloch_vector(result.state.normalized(), 1);
  result.bloch_q2 = bloch_vector(result.state.normalized(), 2);
  result.cross_level_residual = cross_level_residual(result.schedule);
  return result;
}

RotationResult rotation_program(const CompileOptions& options) {
  RotationResult result;
  const QuditUnitary rz_target(kron(rz(kPi / 2), rz(-kPi / 2)));
  const GateSchedule rz_step = rz_schedule(rz_target);
  result.rz_drive = std::get<PinemStep>(rz_step.steps.front()).drive;
  const CompileReport rx1 = compile_named(NamedGate::kRx1, {kPi / 4}, options);
  result.schedule = rz_step.then(rx1.schedule).then(rx1.schedule);

  const int half = schedule_half_width(result.schedule, 0);
  LadderState psi = LadderState::mono_energetic(half);
  result.initial = encode(psi, 4);
  result.trajectory.push_back(
      {"initial", bloch_vector(result.initial, 1), bloch_vector(result.initial, 2)});
  for (const ScheduleStep& step : result.schedule.steps) {
    GateSchedule one;
    one.dim = 4;
    one.steps.push_back(step);
    psi = apply_schedule(psi, one);
    const QuditState q = encode(psi, 4);
    std::string label = "pinem";
    if (const auto* f = std::get_if<FspStep>(&step)) label = "fsp(" + std::to_string(f->steps) + ")";
    result.trajectory.push_back({label, bloch_vector(q, 1), bloch_vector(q, 2)});
  }
  result.final_state = encode(psi, 4);

  CVector expected = kron(CMatrix(CVector::Unit(2, 0)),
                          CMatrix((CVector(2) << 1.0, -kI).finished() / std::sqrt(2.0)));
  result.final_fidelity = state_fidelity(result.final_state.normalized(), expected);

  const CMatrix net = schedule_unitary(result.schedule).matrix();
  result.net_vs_ry_rz = phase_dist(net, kron(ry(-kPi / 2), rz(-kPi / 2)));
  result.net_vs_composition = phase_dist(net, kron(rx(kPi / 2) * rz(kPi / 2), rz(-kPi / 2)));
  result.hth_vs_rx = global_phase_residual(hadamard() * t_gate() * hadamard(), rx(kPi / 4));

  const HarmonicDrive reference({{1, Complex(kPi / 8, kPi / 8)}, {2, Complex(0, 15 * kPi / 16)}});
  result.reference_coupling_infidelity = phase_dist(pinem_qudit(reference, 4), rz_target);
  return result;
}

CompileReport conjecture3_check(int n, int first_qubit, const CompileTemplate& tmpl,
                                const CompileOptions& options) {
  const QuditUnitary target(embed(swap_gate(1, 2), first_qubit, n));
  CompileReport report = compile(target, tmpl, options);
  report.target_name = "swap(" + std::to_string(first_qubit) + "," +
                       std::to_string(first_qubit + 1) + ") on " + std::to_string(n) + " qubits";
  return report;
}

PhysicalSchedule export_physical(const GateSchedule& schedule, const PhysicalParams& params) {
  PhysicalSchedule out;
  out.dim = schedule.dim;
  out.params = params;
  out.z_dispersion = z_dispersion(params);
  for (std::size_t i = 0; i < schedule.steps.size(); ++i) {
    if (const auto* p = std::get_if<PinemStep>(&schedule.steps[i])) {
      PhysicalInteraction interaction;
      for (const Harmonic& h : p->drive.terms()) {
        interaction.terms.push_back({h.j, h.j * params.omega, std::abs(h.g), std::arg(h.g)});
        if (std::abs(h.g) > kFeasibleCoupling) {
          std::ostringstream os;
          os << "step " << i << " harmonic " << h.j << ": |g| = " << std::abs(h.g)
             << " exceeds 2 pi";
          out.warnings.push_back(os.str());
        }
      }
      out.steps.emplace_back(std::move(interaction));
    } else {
      const int steps = std::get<FspStep>(schedule.steps[i]).steps;
      out.steps.emplace_back(
          PhysicalDrift{steps, steps * out.z_dispersion / (2.0 * schedule.dim)});
    }
  }
  return out;
}

}  // namespace fequdit
