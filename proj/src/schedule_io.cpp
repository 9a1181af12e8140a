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


#include "fequdit/schedule_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace fequdit {
namespace {

std::string format_double(double x) {
  if (!std::isfinite(x)) return "null";
  if (x == 0.0) x = 0.0;  // drop the sign of negative zero
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void dump(const Json& v, std::string& out) {
  switch (v.type()) {
    case Json::value_t::object: {
      out += '{';
      bool first = true;
      for (const auto& [key, item] : v.items()) {  // std::map keeps keys sorted
        if (!first) out += ',';
        first = false;
        out += Json(key).dump();
        out += ':';
        dump(item, out);
      }
      out += '}';
      break;
    }
    case Json::value_t::array: {
      out += '[';
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ',';
        dump(v[i], out);
      }
      out += ']';
      break;
    }
    case Json::value_t::number_float:
      out += format_double(v.get<double>());
      break;
    default:
      out += v.dump();
  }
}

const Json& require(const Json& object, const std::string& key, const std::string& where) {
  if (!object.is_object() || !object.contains(key)) {
    throw std::invalid_argument(where + ": missing field '" + key + "'");
  }
  return object.at(key);
}

int require_int(const Json& object, const std::string& key, const std::string& where) {
  const Json& v = require(object, key, where);
  if (!v.is_number_integer()) throw std::invalid_argument(where + "." + key + " must be an integer");
  return v.get<int>();
}

double require_number(const Json& object, const std::string& key, const std::string& where) {
  const Json& v = require(object, key, where);
  if (!v.is_number()) throw std::invalid_argument(where + "." + key + " must be a number");
  return v.get<double>();
}

Json complex_json(Complex z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

}  // namespace

std::string canonical_dump(const Json& value) {
  std::string out;
  dump(value, out);
  out += '\n';
  return out;
}

Json schedule_to_json(const GateSchedule& schedule) {
  Json steps = Json::array();
  for (const ScheduleStep& step : schedule.steps) {
    if (const auto* p = std::get_if<PinemStep>(&step)) {
      Json harmonics = Json::array();
      for (const Harmonic& h : p->drive.terms()) {
        harmonics.push_back({{"j", h.j}, {"g_re", h.g.real()}, {"g_im", h.g.imag()}});
      }
      steps.push_back({{"pinem", {{"harmonics", harmonics}}}});
    } else {
      steps.push_back({{"fsp", {{"steps", std::get<FspStep>(step).steps}}}});
    }
  }
  return Json{{"dim", schedule.dim}, {"steps", steps}};
}

GateSchedule schedule_from_json(const Json& value) {
  const std::string where = "schedule";
  if (!value.is_object()) throw std::invalid_argument("schedule must be an object");
  reject_unknown_fields(value, {"dim", "steps"}, where);
  GateSchedule s;
  s.dim = require_int(value, "dim", where);
  qubit_count(s.dim);
  const Json& steps = require(value, "steps", where);
  if (!steps.is_array()) throw std::invalid_argument("schedule.steps must be an array");
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const std::string at = where + ".steps[" + std::to_string(i) + "]";
    const Json& step = steps[i];
    if (!step.is_object() || step.size() != 1) {
      throw std::invalid_argument(at + " must hold exactly one of 'pinem' or 'fsp'");
    }
    if (step.contains("pinem")) {
      const Json& p = step.at("pinem");
      reject_unknown_fields(p, {"harmonics"}, at + ".pinem");
      const Json& hs = require(p, "harmonics", at + ".pinem");
      if (!hs.is_array()) throw std::invalid_argument(at + ".pinem.harmonics must be an array");
      std::vector<Harmonic> terms;
      for (const Json& h : hs) {
        reject_unknown_fields(h, {"j", "g_re", "g_im"}, at + ".pinem.harmonics");
        terms.push_back({require_int(h, "j", at), Complex(require_number(h, "g_re", at),
                                                          require_number(h, "g_im", at))});
      }
      s.steps.push_back(PinemStep{HarmonicDrive(std::move(terms))});
    } else if (step.contains("fsp")) {
      const Json& f = step.at("fsp");
      reject_unknown_fields(f, {"steps"}, at + ".fsp");
      const int n = require_int(f, "steps", at + ".fsp");
      if (n < 0) throw std::invalid_argument(at + ".fsp.steps must be non-negative");
      s.steps.push_back(FspStep{n});
    } else {
      throw std::invalid_argument(at + " must hold exactly one of 'pinem' or 'fsp'");
    }
  }
  return s;
}

Json report_to_json(const CompileReport& report) {
  return Json{{"target", report.target_name},
              {"schedule", schedule_to_json(report.schedule)},
              {"pinem_count", report.schedule.pinem_count()},
              {"infidelity", report.infidelity},
              {"converged", report.converged},
              {"n_starts", report.n_starts},
              {"n_iterations", report.n_iterations},
              {"n_patterns", report.n_patterns},
              {"rng_seed", report.rng_seed}};
}

Json state_to_json(const QuditState& state) {
  Json alpha = Json::array();
  for (Eigen::Index k = 0; k < state.alpha.size(); ++k) alpha.push_back(complex_json(state.alpha(k)));
  return Json{{"dim", state.dim}, {"alpha", alpha}, {"norm", state.norm}};
}

Json physical_to_json(const PhysicalSchedule& schedule) {
  Json steps = Json::array();
  for (const PhysicalStep& step : schedule.steps) {
    if (const auto* p = std::get_if<PhysicalInteraction>(&step)) {
      Json terms = Json::array();
      for (const auto& t : p->terms) {
        terms.push_back(
            {{"j", t.j}, {"omega", t.omega}, {"magnitude", t.magnitude}, {"phase", t.phase}});
      }
      steps.push_back({{"interaction", {{"harmonics", terms}}}});
    } else {
      const auto& d = std::get<PhysicalDrift>(step);
      steps.push_back({{"drift", {{"steps", d.steps}, {"length_m", d.length}}}});
    }
  }
  Json params{{"beta", schedule.params.beta},
              {"lorentz_gamma", schedule.params.lorentz_gamma},
              {"velocity", schedule.params.velocity},
              {"omega", schedule.params.omega}};
  return Json{{"dim", schedule.dim},
              {"params", params},
              {"z_dispersion_m", schedule.z_dispersion},
              {"steps", steps},
              {"warnings", schedule.warnings}};
}

Json identity_report_to_json(const IdentityReport& r) {
  return Json{{"name", r.name},         {"lhs", r.lhs},
              {"rhs", r.rhs},           {"residual", r.residual},
              {"tolerance", r.tolerance}, {"samples", r.samples},
              {"passed", r.passed},     {"note", r.note}};
}

std::string spectrum_csv(const LadderState& state) {
  std::ostringstream os;
  os << "ell,prob,phase\n";
  const int half = state.half_width();
  for (int ell = -half; ell <= half; ++ell) {
    const Complex a = state.at(ell);
    os << ell << ',' << format_double(std::norm(a)) << ',' << format_double(std::arg(a)) << '\n';
  }
  return os.str();
}

std::string trajectory_csv(const std::vector<TrajectoryPoint>& points) {
  std::ostringstream os;
  os << "step,label,q1_x,q1_y,q1_z,q2_x,q2_y,q2_z\n";
  for (std::size_t i = 0; i < points.size(); ++i) {
    os << i << ',' << points[i].label;
    for (double v : points[i].q1) os << ',' << format_double(v);
    for (double v : points[i].q2) os << ',' << format_double(v);
    os << '\n';
  }
  return os.str();
}

void write_text_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << contents;
  if (!out) throw std::runtime_error("cannot write " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void reject_unknown_fields(const Json& object, const std::vector<std::string>& allowed,
                           const std::string& where) {
  if (!object.is_object()) throw std::invalid_argument(where + " must be an object");
  for (const auto& [key, _] : object.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw std::invalid_argument(where + ": unknown field '" + key + "'");
    }
  }
}

}  // namespace fequdit
