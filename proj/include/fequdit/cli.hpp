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


// Command-line front end: simulate, compile, verify and export.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fequdit {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitTruncation = 2;
inline constexpr int kExitNotConverged = 3;

/// Overrides the default output directory when --out is absent.
inline constexpr const char* kOutDirEnv = "FEQUDIT_OUT_DIR";

/// `args` excludes the program name. Returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fequdit
