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
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "liftdo/factor.hpp"
#include "liftdo/grounding.hpp"

namespace liftdo {

/// Distribution over one or more atoms. `probs` is row-major over `atoms` in
/// the given order (first atom slowest); `labels` holds the matching value
/// names, comma-joined for several atoms.
struct Distribution {
  std::vector<std::size_t> atoms;
  std::vector<std::string> labels;
  std::vector<double> probs;

  double sum() const;
};

/// Atom index -> value index.
using Evidence = std::map<std::size_t, std::size_t>;

class ZeroEvidenceProbability : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Distribution marginal(const GroundModel& gm, std::size_t q, const Evidence& ev = {});
Distribution joint_marginal(const GroundModel& gm, const std::vector<std::size_t>& qs,
                            const Evidence& ev = {});

/// Normalised joint table over `vars` (any order; result is sorted).
TableFactor joint_table(const GroundModel& gm, std::vector<std::size_t> vars, const Evidence& ev = {});
TableFactor joint_table(const std::vector<TableFactor>& factors, std::vector<std::size_t> vars,
                        const std::vector<std::size_t>& cards);

/// P(child | parents) as a table over {child} ∪ parents; every parent
/// configuration's row sums to one.
TableFactor conditional_table(const TableFactor& family_joint, std::size_t child);

/// P(r | pa) for a fully directed model. `parent_values` follow the order of
/// gm.parents(r).
Distribution conditional_given_parents(const GroundModel& gm, std::size_t r,
                                       const std::vector<std::size_t>& parent_values);

/// Reorders a table over sorted atoms into a Distribution over `qs`.
Distribution to_distribution(const GroundModel& gm, const TableFactor& table, const std::vector<std::size_t>& qs);

std::string distribution_label(const GroundModel& gm, const std::vector<std::size_t>& atoms,
                               std::size_t row);

}  // namespace liftdo
