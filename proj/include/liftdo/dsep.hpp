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
#include <vector>

#include "liftdo/grounding.hpp"
#include "liftdo/model.hpp"

namespace liftdo {

/// X ⫫ Y | Z. Entries are atom indices for ground queries and PRV indices
/// for lifted ones.
struct SepQuery {
  std::vector<std::size_t> x;
  std::vector<std::size_t> y;
  std::vector<std::size_t> z;
};

class UnsupportedLiftedQuery : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Throws std::invalid_argument unless X and Y are nonempty and all three
/// sets are pairwise disjoint.
void check_sep_query(const SepQuery& q);

/// Ball passing over the bipartite factor graph. A variable blocks when it
/// is a non-collider in Z or a collider (CHILD of both factors) that is
/// neither in Z nor has a directed descendant in Z. A factor passes from one
/// parent to another only when its CHILD is in Z or has a descendant there.
bool d_separated(const GroundModel& gm, const SepQuery& q);

/// Flags every atom reachable from X by a path that is not blocked given Z.
/// Requires X and Z disjoint.
std::vector<char> d_connected(const GroundModel& gm, const std::vector<std::size_t>& x,
                              const std::vector<std::size_t>& z);

/// Same rules on the parfactor graph, without grounding. Requires every
/// constraint to be TOP.
bool d_separated_lifted(const Model& m, const SepQuery& q);

}  // namespace liftdo
