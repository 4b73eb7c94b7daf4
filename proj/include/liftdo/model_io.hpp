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

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "liftdo/model.hpp"

namespace liftdo {

struct ModelSource {
  std::string text;
  std::string origin = "<stdin>";
};

/// Positioned syntax or declaration error. Line and column are 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string origin, std::size_t line, std::size_t column, std::string message,
             std::string snippet);

  const std::string& origin() const { return origin_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& message() const { return message_; }
  const std::string& snippet() const { return snippet_; }

 private:
  std::string origin_;
  std::size_t line_;
  std::size_t column_;
  std::string message_;
  std::string snippet_;
};

/// Parses the textual model language:
///
///   logvar E {alice, bob, charlie}
///   prv Comp(E) range {low, medium, high}
///   prv Rev range {low, medium, high}
///   parfactor g1(Comp(E), Rev) uniform
///   parfactor g2(Rev, ->Sal(E)) where (E) in {(alice), (bob)} table {
///     (low, low) = 0.25
///     ...
///   }
///
/// `->` marks the CHILD argument. `#` starts a comment. The result is not
/// validated; rows missing from a table are stored as NaN.
Model parse_model(const ModelSource& source);

Model read_model_file(const std::string& path);

/// Canonical text: declaration order, constraint tuples in domain order,
/// potentials with 17 significant digits, `uniform` iff every entry is 1.
std::string serialize_model(const Model& model);

std::string format_potential(double value);

// Result document.

struct ChoiceEntry {
  std::string target;
  std::string parents;  // set notation, "{}" or "{Rev}"
};
using ParentChoiceText = std::vector<ChoiceEntry>;

struct ResultDistribution {
  ParentChoiceText parent_choice;
  std::vector<ParentChoiceText> equivalent_parent_choices;
  std::vector<std::pair<std::string, double>> probabilities;
};

struct QueryResult {
  std::string query;
  std::string kind;  // "observational" or "interventional"
  bool unique = false;
  std::size_t parent_choice_count = 0;
  std::vector<ResultDistribution> distributions;
};

/// JSON text with a fixed key order; identical inputs give identical bytes.
std::string emit_result(const QueryResult& result);

}  // namespace liftdo
