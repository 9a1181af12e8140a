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


// File formats: schedules, reports and states as canonical JSON, spectra
// and trajectories as CSV.

#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "fequdit/compiler.hpp"
#include "fequdit/gates.hpp"

namespace fequdit {

using Json = nlohmann::json;

/// Sorted keys, no whitespace, doubles at 17 significant digits. Equal
/// values always produce equal bytes.
std::string canonical_dump(const Json& value);

/// {"dim": d, "steps": [{"pinem": {"harmonics": [{"j", "g_re", "g_im"}]}}
/// | {"fsp": {"steps": n}}]}
Json schedule_to_json(const GateSchedule& schedule);
/// Throws std::invalid_argument on a malformed document or unknown field.
GateSchedule schedule_from_json(const Json& value);

Json report_to_json(const CompileReport& report);
Json state_to_json(const QuditState& state);
Json physical_to_json(const PhysicalSchedule& schedule);
Json identity_report_to_json(const IdentityReport& report);

/// ell,prob,phase over the whole window.
std::string spectrum_csv(const LadderState& state);
/// step,label,q1_x,q1_y,q1_z,q2_x,q2_y,q2_z
std::string trajectory_csv(const std::vector<TrajectoryPoint>& points);

/// Throws std::runtime_error when the file cannot be written.
void write_text_file(const std::string& path, const std::string& contents);
/// Throws std::runtime_error when the file cannot be read.
std::string read_text_file(const std::string& path);

/// Throws std::invalid_argument naming the first key outside `allowed`.
void reject_unknown_fields(const Json& object, const std::vector<std::string>& allowed,
                           const std::string& where);

}  // namespace fequdit
