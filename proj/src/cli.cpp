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


#include "fequdit/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "fequdit/schedule_io.hpp"

namespace fequdit {
namespace {

namespace fs = std::filesystem;

struct Common {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out_dir;
};

std::string output_dir(const Common& c) {
  if (!c.out_dir.empty()) return c.out_dir;
  if (const char* env = std::getenv(kOutDirEnv); env != nullptr && *env != '\0') return env;
  return "out";
}

std::string prepare_out(const Common& c) {
  const std::string dir = output_dir(c);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory " + dir);
  return dir;
}

Json load_config(const std::string& path) {
  if (path.empty()) return Json::object();
  const std::string text = read_text_file(path);
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

template <typename T>
T field_or(const Json& object, const std::string& key, T fallback) {
  if (!object.contains(key)) return fallback;
  try {
    return object.at(key).get<T>();
  } catch (const Json::exception&) {
    throw std::invalid_argument("field '" + key + "' has the wrong type");
  }
}

std::uint64_t resolve_seed(const Common& c, const Json& config) {
  if (c.seed) return *c.seed;
  return field_or<std::uint64_t>(config, "seed", 1);
}

GateSchedule schedule_from_field(const Json& value) {
  if (value.is_string()) return schedule_from_json(load_config(value.get<std::string>()));
  return schedule_from_json(value);
}

Json bloch_json(const std::array<double, 3>& b) { return Json::array({b[0], b[1], b[2]}); }

std::array<double, 3> safe_bloch(const QuditState& q, int qubit) {
  if (q.norm < 1e-12) return {0.0, 0.0, 0.0};
  return bloch_vector(q.normalized(), qubit);
}

// ---------------------------------------------------------------- simulate

int cmd_simulate(const Common& common, std::ostream& out) {
  if (common.config_path.empty()) throw std::invalid_argument("simulate needs --config");
  const Json config = load_config(common.config_path);
  reject_unknown_fields(config, {"dim", "initial", "schedule", "program", "truncation_budget",
                                 "half_width", "outputs", "seed"},
                        "config");
  const std::uint64_t seed = resolve_seed(common, config);
  CompileOptions copts;
  copts.seed = seed;

  std::string program = field_or<std::string>(config, "program", "");
  if (!program.empty() && config.contains("schedule")) {
    throw std::invalid_argument("config: give either 'schedule' or 'program', not both");
  }
  GateSchedule schedule;
  std::optional<CVector> target;
  std::string default_initial = "mono_energetic";
  if (program == "bell") {
    const BellResult bell = bell_program(copts);
    schedule = bell.schedule;
    target = bell_state(0, 0);
    default_initial = "basis";
  } else if (program == "rotation") {
    schedule = rotation_program(copts).schedule;
    target = kron(CMatrix(CVector::Unit(2, 0)),
                  CMatrix((CVector(2) << 1.0, -kI).finished() / std::sqrt(2.0)));
  } else if (!program.empty()) {
    throw std::invalid_argument("config: unknown program '" + program + "'");
  } else if (config.contains("schedule")) {
    schedule = schedule_from_field(config.at("schedule"));
  } else {
    schedule.dim = field_or<int>(config, "dim", 4);
  }
  const int d = field_or<int>(config, "dim", schedule.dim);
  if (d != schedule.dim) throw std::invalid_argument("config: dim differs from schedule dim");
  qubit_count(d);

  const Json initial = field_or<Json>(config, "initial", Json{{"kind", default_initial}});
  reject_unknown_fields(initial, {"kind", "k", "ell_min", "psi"}, "config.initial");
  const std::string kind = field_or<std::string>(initial, "kind", default_initial);
  int support = 0;
  if (kind == "basis") {
    support = d;
  } else if (kind == "explicit") {
    const int ell_min = field_or<int>(initial, "ell_min", 0);
    const int count = static_cast<int>(field_or<Json>(initial, "psi", Json::array()).size());
    if (count == 0) throw std::invalid_argument("config.initial.psi must be non-empty");
    support = std::max(std::abs(ell_min), std::abs(ell_min + count - 1));
  } else if (kind != "mono_energetic") {
    throw std::invalid_argument("config.initial.kind must be mono_energetic, basis or explicit");
  }

  const int half =
      field_or<int>(config, "half_width", schedule_half_width(schedule, std::max(support, 1)));
  if (half < support) throw std::invalid_argument("config.half_width smaller than the input");
  LadderState psi = LadderState::mono_energetic(half);
  if (kind == "basis") {
    const int k = field_or<int>(initial, "k", 0);
    if (k < 0 || k >= d) throw std::invalid_argument("config.initial.k out of range");
    psi = decode_basis(d, half)[k];
  } else if (kind == "explicit") {
    const int ell_min = field_or<int>(initial, "ell_min", 0);
    CVector amps = CVector::Zero(2 * half + 1);
    const Json& list = initial.at("psi");
    for (std::size_t i = 0; i < list.size(); ++i) {
      const Json& z = list[i];
      if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number()) {
        throw std::invalid_argument("config.initial.psi entries must be [re, im]");
      }
      amps(half + ell_min + static_cast<int>(i)) = Complex(z[0].get<double>(), z[1].get<double>());
    }
    psi = LadderState::normalized(half, amps);
  }

  const double budget = field_or<double>(config, "truncation_budget", kDefaultTruncationBudget);
  const Json outputs = field_or<Json>(config, "outputs", Json::object());
  reject_unknown_fields(outputs, {"spectrum", "state", "trajectory"}, "config.outputs");

  std::vector<TrajectoryPoint> trajectory;
  const auto record = [&](const std::string& label) {
    const QuditState q = encode(psi, d);
    trajectory.push_back({label, safe_bloch(q, 1), safe_bloch(q, 2)});
  };
  if (d == 4) record("initial");
  for (const ScheduleStep& step : schedule.steps) {
    GateSchedule one;
    one.dim = d;
    one.steps.push_back(step);
    psi = apply_schedule(psi, one, budget);
    if (d == 4) {
      std::string label = "pinem";
      if (const auto* f = std::get_if<FspStep>(&step)) label = "fsp(" + std::to_string(f->steps) + ")";
      record(label);
    }
  }

  const QuditState q = encode(psi, d);
  Json state = state_to_json(q);
  state["seed"] = seed;
  state["edge_mass"] = psi.edge_mass();
  if (!program.empty()) state["program"] = program;
  if (target) state["fidelity"] = state_fidelity(q.normalized(), *target);
  if (d == 4) {
    state["bloch_q1"] = bloch_json(safe_bloch(q, 1));
    state["bloch_q2"] = bloch_json(safe_bloch(q, 2));
  }

  const std::string dir = prepare_out(common);
  const fs::path base(dir);
  write_text_file(base / field_or<std::string>(outputs, "spectrum", "spectrum.csv"),
                  spectrum_csv(psi));
  write_text_file(base / field_or<std::string>(outputs, "state", "state.json"),
                  canonical_dump(state));
  if (d == 4) {
    write_text_file(base / field_or<std::string>(outputs, "trajectory", "trajectory.csv"),
                    trajectory_csv(trajectory));
  }
  out << "simulate: wrote " << dir << "\n";
  if (target) out << "fidelity " << state["fidelity"].get<double>() << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------- compile

struct CompileArgs {
  std::string target;
  std::vector<double> angles;
  int n_pinem = 0;
  int starts = 0;
  double threshold = 0.0;
  bool best_effort = false;
};

int cmd_compile(const Common& common, CompileArgs args, std::ostream& out, std::ostream& err) {
  const Json config = load_config(common.config_path);
  reject_unknown_fields(config, {"target", "angles", "n_pinem", "fsp_pattern", "harmonics",
                                 "n_starts", "threshold", "max_iterations", "seed"},
                        "config");
  if (args.target.empty()) args.target = field_or<std::string>(config, "target", "");
  if (args.target.empty()) throw std::invalid_argument("compile needs a target gate");
  if (args.angles.empty()) args.angles = field_or<std::vector<double>>(config, "angles", {});
  if (args.n_pinem == 0) args.n_pinem = field_or<int>(config, "n_pinem", 0);

  CompileOptions options;
  options.seed = resolve_seed(common, config);
  options.n_starts = args.starts > 0 ? args.starts : field_or<int>(config, "n_starts", 64);
  options.threshold =
      args.threshold > 0.0 ? args.threshold : field_or<double>(config, "threshold", 1e-8);
  options.max_iterations = field_or<int>(config, "max_iterations", 1000);
  if (options.n_starts < 1) throw std::invalid_argument("n_starts must be positive");

  const NamedGate gate = parse_named_gate(args.target);
  CompileReport report;
  if (args.n_pinem > 0 || config.contains("fsp_pattern") || config.contains("harmonics")) {
    CompileTemplate tmpl;
    tmpl.n_pinem = args.n_pinem > 0 ? args.n_pinem : named_gate_budget(gate);
    tmpl.harmonics = field_or<std::vector<int>>(config, "harmonics", {});
    if (config.contains("fsp_pattern")) {
      tmpl.fsp_pattern = field_or<std::vector<int>>(config, "fsp_pattern", {});
    }
    report = compile(named_gate_target(gate, args.angles), tmpl, options);
    report.target_name = named_gate_name(gate);
  } else {
    report = compile_named(gate, args.angles, options);
  }

  const fs::path base(prepare_out(common));
  write_text_file(base / "schedule.json", canonical_dump(schedule_to_json(report.schedule)));
  Json rj = report_to_json(report);
  rj["angles"] = args.angles;
  write_text_file(base / "report.json", canonical_dump(rj));
  out << report.target_name << ": infidelity " << report.infidelity << ", "
      << report.schedule.pinem_count() << " PINEM, converged " << std::boolalpha
      << report.converged << "\n";
  if (!report.converged && !args.best_effort) {
    err << "compile did not converge (use --best-effort to accept)\n";
    return kExitNotConverged;
  }
  return kExitOk;
}

// ---------------------------------------------------------------- verify

struct VerifyArgs {
  std::string suite;
  std::vector<int> dims;
  int samples = -1;
};

void add_check(Json& checks, bool& all, IdentityReport r) {
  all = all && r.passed;
  checks.push_back(identity_report_to_json(r));
}

IdentityReport make_check(std::string name, double residual, double tolerance, int samples,
                          std::string note = {}, bool above = false) {
  IdentityReport r;
  r.name = std::move(name);
  r.residual = residual;
  r.tolerance = tolerance;
  r.samples = samples;
  r.passed = above ? residual > tolerance : residual < tolerance;
  r.note = std::move(note);
  return r;
}

std::vector<int> harmonics_upto(int d) {
  std::vector<int> h;
  for (int j = 1; j <= std::max(1, d / 2); ++j) h.push_back(j);
  return h;
}

void ladder_suite(const std::vector<int>& dims, int samples, std::uint64_t seed, Json& checks,
                  bool& all) {
  const int window = 32;
  {
    const LadderState delta = LadderState::mono_energetic(4);
    const double r = (apply_pinem(delta, HarmonicDrive{}).amplitudes() - delta.amplitudes()).norm();
    add_check(checks, all, make_check("empty drive is the identity", r, 1e-15, 1));
  }
  for (int d : dims) {
    const std::string tag = " d=" + std::to_string(d);
    double anti = 0, dense = 0, norm = 0, group = 0, fsp_add = 0;
    for (int s = 0; s < samples; ++s) {
      const std::uint64_t sd = seed * 100003ull + static_cast<std::uint64_t>(s) * 31ull + d;
      const HarmonicDrive a = random_drive(harmonics_upto(d), kPi, sd);
      const HarmonicDrive b = random_drive(harmonics_upto(d), kPi, sd + 17);
      const CMatrix gen = pinem_generator(a, window);
      anti = std::max(anti, max_abs(gen + gen.adjoint()));
      const CVector col = pinem_unitary(a, window).col(window);
      dense = std::max(dense, (pinem_amplitudes(a, window, 1.0).f - col).norm());

      const LadderState psi = random_ladder_state(4, 4, sd);
      const int half = required_half_width(a + b, 4) + required_half_width(a, 0);
      const LadderState wide = psi.widened(half);
      const LadderState once = apply_pinem(wide, a + b);
      const LadderState twice = apply_pinem(apply_pinem(wide, a), b);
      norm = std::max(norm, std::abs(once.norm() - 1.0));
      group = std::max(group, (once.amplitudes() - twice.amplitudes()).norm());

      const Rational z1(s + 1, 3 * d), z2(2 * s + 1, 5 * d);
      fsp_add = std::max(fsp_add, (apply_fsp(apply_fsp(psi, z1), z2).amplitudes() -
                                   apply_fsp(psi, z1 + z2).amplitudes())
                                      .norm());
    }
    add_check(checks, all, make_check("generator anti-Hermitian" + tag, anti, 1e-15, samples));
    add_check(checks, all,
              make_check("banded propagation vs dense exponential" + tag, dense, 1e-9, samples));
    add_check(checks, all, make_check("PINEM preserves norm" + tag, norm, 1e-9, samples));
    add_check(checks, all, make_check("PINEM drives compose additively" + tag, group, 1e-9, samples));
    add_check(checks, all, make_check("propagation distances add" + tag, fsp_add, 1e-12, samples));
  }
}

void qudit_suite(const std::vector<int>& dims, int samples, std::uint64_t seed, Json& checks,
                 bool& all) {
  for (int d : dims) {
    const std::string tag = " d=" + std::to_string(d);
    ClosureOptions co;
    co.seed = seed;
    double pinem_closure = 0, methods = 0, projection = 0, offdiag = 0;
    const int closure_samples = std::min(samples, 3);
    for (int s = 0; s < samples; ++s) {
      const HarmonicDrive drive = random_drive(harmonics_upto(d), kPi, seed * 7919ull + s + d);
      const CVector cs = pinem_eigenphases(drive, d, EigenphaseMethod::kCharacterSum);
      const CVector cf = pinem_eigenphases(drive, d, EigenphaseMethod::kClosedForm);
      methods = std::max(methods, (cs - cf).cwiseAbs().maxCoeff());
      const CMatrix proj = project_operator(PinemOp{drive}, d);
      CMatrix off = proj;
      off.diagonal().setZero();
      offdiag = std::max(offdiag, max_abs(off));
      projection = std::max(projection, (proj.diagonal() - cs).cwiseAbs().maxCoeff());
      if (s < closure_samples) {
        pinem_closure = std::max(pinem_closure, closure_residual(PinemOp{drive}, d, co).residual);
      }
    }
    const double fsp_int = closure_residual(FspOp{Rational(1, 2 * d)}, d, co).residual;
    const double fsp_third = closure_residual(FspOp{Rational(1, 3 * d)}, d, co).residual;
    add_check(checks, all, make_check("PINEM closes on the qudit" + tag, pinem_closure, 1e-8,
                                      closure_samples));
    add_check(checks, all, make_check("one propagation step closes" + tag, fsp_int, 1e-8, 1));
    add_check(checks, all,
              make_check("z/z_D = 1/(3d) leaves the qudit" + tag, fsp_third, 1e-3, 1,
                         "passes when the residual exceeds the tolerance", true));
    add_check(checks, all, make_check("projected PINEM is diagonal" + tag, offdiag, 1e-9, samples));
    add_check(checks, all,
              make_check("character sum vs projection" + tag, projection, 1e-9, samples));
    add_check(checks, all, make_check("character sum vs closed form" + tag, methods, 1e-9, samples));
  }
}

Json phase_sweep_json(const PhaseSweepReport& r) {
  return Json{{"dim", r.dim},
              {"n_harmonics", r.n_harmonics},
              {"samples", r.samples},
              {"successes", r.successes},
              {"success_rate", r.success_rate()},
              {"threshold", r.threshold},
              {"worst_residual", r.worst_residual},
              {"histogram", r.histogram}};
}

void conjecture_suite(const std::vector<int>& dims, int samples, std::uint64_t seed, Json& report) {
  SweepOptions so;
  so.samples = samples;
  so.seed = seed;
  so.tolerance = 1e-8;
  Json c1 = Json::array();
  Json c2 = Json::array();
  int max_n = 0;
  for (int d : dims) max_n = std::max(max_n, qubit_count(d));
  for (int n = 1; n <= max_n; ++n) {
    for (int k = 0; k <= n - 1; ++k) {
      const auto [p, f] = conjecture1_check(n, k, so);
      c1.push_back(identity_report_to_json(p));
      c1.push_back(identity_report_to_json(f));
    }
  }
  for (int d : dims) c2.push_back(phase_sweep_json(conjecture2_sweep(d, d / 2, so)));

  CompileTemplate tmpl;
  tmpl.n_pinem = 6;
  tmpl.max_patterns = 3;
  CompileOptions co;
  co.seed = seed;
  co.n_starts = 8;
  co.max_iterations = 400;
  co.threshold = 1e-6;
  Json c3 = Json::array();
  for (int first : {1, 2}) c3.push_back(report_to_json(conjecture3_check(3, first, tmpl, co)));

  report["conjecture1"] = c1;
  report["conjecture2"] = c2;
  report["conjecture3"] = c3;
}

int cmd_verify(const Common& common, VerifyArgs args, std::ostream& out) {
  const Json config = load_config(common.config_path);
  reject_unknown_fields(config, {"suite", "dims", "samples", "seed"}, "config");
  if (args.suite.empty()) args.suite = field_or<std::string>(config, "suite", "");
  if (args.dims.empty()) args.dims = field_or<std::vector<int>>(config, "dims", {4});
  if (args.samples < 0) args.samples = field_or<int>(config, "samples", 20);
  for (int d : args.dims) {
    if (qubit_count(d) < 1) throw std::invalid_argument("dims must be powers of two >= 2");
  }
  const std::uint64_t seed = resolve_seed(common, config);

  Json report{{"suite", args.suite}, {"dims", args.dims}, {"samples", args.samples},
              {"seed", seed}};
  Json checks = Json::array();
  bool all = true;
  bool evidence_only = false;
  if (args.suite == "ladder") {
    ladder_suite(args.dims, args.samples, seed, checks, all);
  } else if (args.suite == "qudit") {
    qudit_suite(args.dims, args.samples, seed, checks, all);
  } else if (args.suite == "results") {
    SweepOptions so;
    so.samples = args.samples;
    so.seed = seed;
    for (const IdentityReport& r : results_suite(so)) add_check(checks, all, r);
  } else if (args.suite == "conjectures") {
    evidence_only = true;
    conjecture_suite(args.dims, args.samples, seed, report);
  } else {
    throw std::invalid_argument("suite must be ladder, qudit, results or conjectures");
  }
  report["checks"] = checks;
  report["all_passed"] = all;

  const fs::path base(prepare_out(common));
  write_text_file(base / ("verify_" + args.suite + ".json"), canonical_dump(report));
  out << "verify " << args.suite << ": " << (all ? "all checks passed" : "FAILED") << "\n";
  return all || evidence_only ? kExitOk : kExitTruncation;
}

// ---------------------------------------------------------------- export

struct ExportArgs {
  std::string schedule_path;
  double kinetic_energy_ev = 0.0;
  double photon_energy_ev = 0.0;
  double z_dispersion = 0.0;
};

int cmd_export(const Common& common, ExportArgs args, std::ostream& out) {
  const Json config = load_config(common.config_path);
  reject_unknown_fields(config, {"schedule", "params"}, "config");
  const Json params = field_or<Json>(config, "params", Json::object());
  reject_unknown_fields(
      params, {"kinetic_energy_ev", "photon_energy_ev", "energy_spread_ev", "z_dispersion_m"},
      "config.params");

  GateSchedule schedule;
  if (!args.schedule_path.empty()) {
    schedule = schedule_from_json(load_config(args.schedule_path));
  } else if (config.contains("schedule")) {
    schedule = schedule_from_field(config.at("schedule"));
  } else {
    throw std::invalid_argument("export needs --schedule or a config 'schedule'");
  }
  const double e0 = args.kinetic_energy_ev > 0 ? args.kinetic_energy_ev
                                               : field_or<double>(params, "kinetic_energy_ev", 200e3);
  const double photon = args.photon_energy_ev > 0
                            ? args.photon_energy_ev
                            : field_or<double>(params, "photon_energy_ev", 1.0);
  std::optional<double> spread;
  if (params.contains("energy_spread_ev")) spread = field_or<double>(params, "energy_spread_ev", 0.0);
  PhysicalParams p = PhysicalParams::from_energies(e0, photon, spread);
  const double zd = args.z_dispersion > 0 ? args.z_dispersion
                                          : field_or<double>(params, "z_dispersion_m", 0.0);
  if (zd > 0) p.z_dispersion_override = zd;

  const PhysicalSchedule ps = export_physical(schedule, p);
  const fs::path base(prepare_out(common));
  write_text_file(base / "physical.json", canonical_dump(physical_to_json(ps)));
  out << "export: z_D = " << ps.z_dispersion << " m, " << ps.warnings.size() << " warning(s)\n";
  return kExitOk;
}

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--config", c.config_path, "JSON config file");
  sub->add_option("--seed", c.seed, "RNG seed");
  sub->add_option("--out", c.out_dir, "output directory");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Free-electron qudit simulator and gate compiler", "fequdit"};
  app.require_subcommand(1);

  Common common;
  CompileArgs compile_args;
  VerifyArgs verify_args;
  ExportArgs export_args;

  CLI::App* simulate = app.add_subcommand("simulate", "run a schedule on the energy ladder");
  add_common(simulate, common);

  CLI::App* compile_cmd = app.add_subcommand("compile", "compile a named gate");
  add_common(compile_cmd, common);
  compile_cmd->add_option("target", compile_args.target,
                          "hadamard_1, hadamard_2, cnot21, cnot12, swap, rz or rx");
  compile_cmd->add_option("--angles", compile_args.angles, "rotation angles")->allow_extra_args();
  compile_cmd->add_option("--n-pinem", compile_args.n_pinem, "PINEM count (skips named defaults)");
  compile_cmd->add_option("--starts", compile_args.starts, "multi-start count");
  compile_cmd->add_option("--threshold", compile_args.threshold, "convergence threshold");
  compile_cmd->add_flag("--best-effort", compile_args.best_effort, "exit 0 without convergence");

  CLI::App* verify = app.add_subcommand("verify", "run an invariant suite");
  add_common(verify, common);
  verify->add_option("suite", verify_args.suite, "ladder, qudit, results or conjectures");
  verify->add_option("--dims", verify_args.dims, "dimensions")->delimiter(',');
  verify->add_option("--samples", verify_args.samples, "random samples per check");

  CLI::App* export_cmd = app.add_subcommand("export", "annotate a schedule in physical units");
  add_common(export_cmd, common);
  export_cmd->add_option("--schedule", export_args.schedule_path, "schedule JSON");
  export_cmd->add_option("--kinetic-energy-ev", export_args.kinetic_energy_ev, "electron energy");
  export_cmd->add_option("--photon-energy-ev", export_args.photon_energy_ev, "photon energy");
  export_cmd->add_option("--z-dispersion", export_args.z_dispersion, "z_D override in meters");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }

  try {
    if (*simulate) return cmd_simulate(common, out);
    if (*compile_cmd) return cmd_compile(common, compile_args, out, err);
    if (*verify) return cmd_verify(common, verify_args, out);
    if (*export_cmd) return cmd_export(common, export_args, out);
  } catch (const TruncationError& e) {
    err << "truncation: " << e.what() << "\n";
    return kExitTruncation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitConfig;
}

}  // namespace fequdit
