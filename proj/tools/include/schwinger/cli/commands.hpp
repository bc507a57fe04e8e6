// Copyright 2026 The schwinger-qre Authors
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

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "schwinger/cli/config.hpp"

namespace schwinger::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitFail = 3;

inline constexpr const char* kCostsSchema = "schwinger-costs/1";
inline constexpr const char* kVerifySchema = "schwinger-verify/1";
inline constexpr const char* kFitsSchema = "schwinger-fits/1";
inline constexpr const char* kPlanListSchema = "schwinger-plans/1";

/// Each command writes its report to `out` and diagnostics to `err` and
/// returns a process exit code.
int cmd_plan(const SweepConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_verify(const SweepConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_estimate(const SweepConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_compare(const SweepConfig& cfg, std::ostream& out, std::ostream& err);

/// Full command-line entry point: parses flags, loads the config, applies
/// overrides and dispatches.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace schwinger::cli
