// Copyright 2026 The liftdo Authors.
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

#include <ostream>
#include <string>
#include <vector>

#include "liftdo/causal.hpp"
#include "liftdo/model_io.hpp"

namespace liftdo {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kOk = 0,
  kValidationFailed = 1,
  kParseFailed = 2,
  kBadQuery = 3,
  kTargetOverlap = 4,
  kOracleGuard = 5,
};

/// Runs the command line `args` (without the program name), writing results
/// to `out` and diagnostics to `err`; returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Result document for an interventional answer.
QueryResult to_result(const std::string& query, const DoAnswer& answer);

}  // namespace liftdo
