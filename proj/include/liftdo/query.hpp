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

#include "liftdo/causal.hpp"
#include "liftdo/dsep.hpp"
#include "liftdo/model.hpp"

namespace liftdo {

/// Malformed query text.
class QueryError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct ParsedQuery {
  std::string text;
  std::vector<GroundAtom> query;
  std::vector<std::pair<GroundAtom, std::size_t>> evidence;
  std::vector<InterventionTarget> targets;
  bool interventional = false;

  DoQuery do_query() const { return {query, targets}; }
};

/// Query grammar:
///
///   P(Rev)
///   P(Rev, Sal(bob) | Comp(alice)=high, Sal(alice)=low)
///   P(Rev | do(Comp(alice)=high))
///   P(Rev | do(Comp(E)=high))              every grounding of Comp
///   P(Rev | do(Comp(E)|{alice,bob}=high))  a constrained PRV
///
/// Throws QueryError on syntax errors and UnknownAtom on names the model
/// does not declare.
ParsedQuery parse_query(const Model& m, const std::string& text);

/// "X1, X2 ; Y | Z1, Z2" over ground atoms, or over PRV names (`Comp(E)`,
/// `Rev`) when `lifted` is set. Returns atom indices of ground(m) or PRV
/// indices respectively.
SepQuery parse_sep_query(const Model& m, const std::string& text, bool lifted);

}  // namespace liftdo
