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
#include <optional>
#include <vector>

#include "liftdo/model.hpp"

namespace liftdo {

/// A ground atom (one grounding), a constrained PRV (several) or a whole PRV
/// (`groundings` empty).
struct TargetSpec {
  std::size_t prv = 0;
  std::optional<std::vector<Tuple>> groundings;

  bool operator==(const TargetSpec&) const = default;
};

/// Sorted groundings covered by a target; throws LookupError on an unknown
/// PRV or a grounding outside its domain.
std::vector<Tuple> target_groundings(const Model& m, const TargetSpec& t);

/// Splits every parfactor whose groundings mention target atoms so each
/// target becomes its own lifted node. The tuples untouched by any target
/// keep the parfactor's name; split-off groups are named with added `'`
/// in order of the targets they mention. Parfactors that would not change
/// are kept as they are, so splitting is idempotent.
Model split_on_atoms(const Model& m, const std::vector<TargetSpec>& targets);

/// Replaces the listed parfactors by one single-tuple parfactor per
/// grounding, e.g. g1 -> g1_alice, g1_bob, g1_charlie.
Model split_to_ground(const Model& m, const std::vector<std::size_t>& parfactors);

/// Every parfactor split to single tuples; the model of the ground graph.
Model ground_as_model(const Model& m);

}  // namespace liftdo
