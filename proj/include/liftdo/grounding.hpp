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
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "liftdo/factor.hpp"
#include "liftdo/model.hpp"

namespace liftdo {

/// One instance of a parfactor. `atoms[i]` is the ground atom at argument
/// position i; the table is shared with every other grounding of the source.
struct GroundFactor {
  std::size_t source = 0;
  Tuple binding;
  std::vector<std::size_t> atoms;
  std::optional<std::size_t> child_index;
  std::shared_ptr<const std::vector<double>> table;

  /// Position in `atoms` of `child_index` parents, i.e. every other position.
  bool has_child() const { return child_index.has_value(); }
  std::size_t child_atom() const { return atoms[*child_index]; }
};

/// Total mapping from atom index to range value index.
struct Assignment {
  std::vector<std::size_t> values;
};

class GroundModel {
 public:
  std::vector<GroundAtom> atoms;
  std::vector<std::string> atom_names;
  std::vector<std::vector<std::string>> ranges;
  std::vector<GroundFactor> factors;
  std::vector<std::string> factor_sources;  // parfactor name per source index

  std::size_t size() const { return atoms.size(); }
  std::size_t cardinality(std::size_t atom) const { return ranges[atom].size(); }

  std::optional<std::size_t> find(const GroundAtom& atom) const;
  std::optional<std::size_t> find(const std::string& name) const;
  std::size_t index_of(const std::string& name) const;  // throws LookupError

  double factor_value(const GroundFactor& f, const Assignment& a) const;
  double unnormalized(const Assignment& a) const;

  /// Parents of an atom in the directed projection (union over factors in
  /// which the atom is CHILD), sorted.
  std::vector<std::size_t> parents(std::size_t atom) const;
  std::vector<std::vector<std::size_t>> successors() const;
  bool acyclic() const;

  /// Every factor over two or more distinct atoms has a CHILD.
  bool fully_directed() const;

  /// Factors without CHILD over two or more distinct atoms.
  std::vector<std::size_t> ambiguous_factors() const;

  /// Number of joint assignments, saturating at SIZE_MAX.
  std::size_t state_space() const;

 private:
  friend GroundModel ground(const Model& model);
  std::map<GroundAtom, std::size_t> index_;
  std::map<std::string, std::size_t> by_name_;
};

/// Grounds a model: one atom per PRV grounding (declaration then domain
/// order) and one factor per parfactor constraint tuple.
GroundModel ground(const Model& model);

/// Z computed by variable elimination. Falls back to scaled arithmetic when
/// a dry-run bound says plain doubles could overflow; throws
/// std::overflow_error if Z is not finite.
double normalization(const GroundModel& gm);
double log_normalization(const GroundModel& gm);

/// P_M with Z computed once at construction.
class JointDistribution {
 public:
  explicit JointDistribution(const GroundModel& gm);

  double probability(const Assignment& a) const;
  double z() const { return z_; }

 private:
  const GroundModel* gm_;
  double z_;
  double log_z_;
  bool scaled_;
};

double joint_probability(const GroundModel& gm, const Assignment& a);

/// The factor as a dense table over its distinct atoms. Repeated atoms take
/// the diagonal.
TableFactor to_table_factor(const GroundModel& gm, const GroundFactor& f);
std::vector<TableFactor> table_factors(const GroundModel& gm);

/// Odometer over all joint assignments, last atom fastest.
bool next_assignment(const GroundModel& gm, Assignment& a);

}  // namespace liftdo
