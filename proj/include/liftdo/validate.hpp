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

#include <string>
#include <vector>

#include "liftdo/model.hpp"

namespace liftdo {

enum class Severity { kWarning, kError };

struct Issue {
  Severity severity = Severity::kError;
  std::string message;
  std::string location;  // declaration the issue belongs to, may be empty
};

struct ValidationReport {
  bool ok = true;
  std::vector<Issue> issues;

  void error(std::string message, std::string location = {});
  void warning(std::string message, std::string location = {});
  std::string to_string() const;
};

/// Checks every structural rule of a PPCFG and reports all violations.
/// Never throws on malformed input.
ValidationReport validate(const Model& model);

/// A directed cycle in the PRV-level directed projection, as a closed walk of
/// PRV indices (first == last), or empty when the projection is acyclic.
std::vector<std::size_t> find_directed_cycle(const Model& model);

}  // namespace liftdo
