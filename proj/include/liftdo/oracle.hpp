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
#include <utility>
#include <vector>

#include "liftdo/causal.hpp"
#include "liftdo/grounding.hpp"
#include "liftdo/inference.hpp"

namespace liftdo {

class TooManyAmbiguousFactors : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class StateSpaceTooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kMaxAmbiguousFactors = 12;
inline constexpr std::size_t kMaxStateSpace = 10'000'000;

/// Sorted answers of every single-atom query X ⫫ Y | Z with |Z| <= 2.
std::vector<char> independence_signature(const GroundModel& gm);

/// Every CHILD assignment to the undirected ground factors that is acyclic
/// and has the same independence signature as `gm`, in odometer order over
/// the undirected factors (last fastest, positions in argument order).
std::vector<GroundModel> enumerate_extensions(const GroundModel& gm);

/// Normalised joint over all assignments, last atom fastest.
std::vector<double> exhaustive_joint(const GroundModel& gm);

/// The truncated factorisation as a literal sum over every assignment, with
/// P(r | pa) read off the exhaustive joint.
Distribution literal_do_distribution(const GroundModel& full, const std::vector<double>& joint,
                                     const std::vector<std::pair<std::size_t, std::size_t>>& clamp,
                                     const std::vector<std::size_t>& query);

/// All extensions, each evaluated literally; distinct distributions with the
/// targets' ground parents as provenance.
DoAnswer brute_force_do(const Model& m, const DoQuery& dq);

}  // namespace liftdo
