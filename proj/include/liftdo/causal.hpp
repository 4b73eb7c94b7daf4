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
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "liftdo/factor.hpp"
#include "liftdo/grounding.hpp"
#include "liftdo/inference.hpp"
#include "liftdo/lifted_graph.hpp"
#include "liftdo/model.hpp"
#include "liftdo/shattering.hpp"

namespace liftdo {

class QueryTargetOverlap : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class UnknownAtom : public LookupError {
 public:
  using LookupError::LookupError;
};

struct InterventionTarget {
  TargetSpec target;
  std::size_t value = 0;
};

/// P(query | do(targets)). PRV targets set every covered grounding to the
/// same value.
struct DoQuery {
  std::vector<GroundAtom> query;
  std::vector<InterventionTarget> targets;
};

/// One candidate parent set per target, as sorted lifted-graph node indices
/// of the prepared model.
struct ParentChoice {
  std::vector<std::vector<std::size_t>> parents;

  bool operator==(const ParentChoice&) const = default;
};

/// Human-readable choice: (target name, parent names) per target.
using ChoiceLabel = std::vector<std::pair<std::string, std::vector<std::string>>>;

struct DoResult {
  Distribution distribution;
  std::vector<ChoiceLabel> choices;  // every choice yielding this distribution
};

struct DoAnswer {
  bool unique = false;
  std::vector<DoResult> results;
  std::size_t choice_count = 0;           // enumerated (clique-filtered) choices
  std::vector<ChoiceLabel> inextensible;  // choices without a valid extension
};

/// The model after splitting, with every target a dedicated lifted node.
/// Ground-atom targets also get their neighbours split into single atoms so
/// parent sets are enumerated per atom. PRV targets stay one node unless
/// their groundings are not structurally interchangeable, in which case they
/// are handled atom by atom.
struct PreparedQuery {
  Model model;
  std::vector<TargetSpec> targets;          // after any per-atom fallback
  std::vector<std::size_t> target_values;
  std::vector<std::size_t> target_nodes;    // in LiftedGraph(model)
  std::vector<std::string> target_names;
};

PreparedQuery prepare_do_query(const Model& m, const DoQuery& dq);

/// Ne(target) = ∅ for every target after splitting.
bool uniquely_identifiable(const Model& m, const DoQuery& dq);

/// Clique-filtered subsets of each target's undirected neighbours, subset
/// bitmask order per target, first target varying slowest.
std::vector<ParentChoice> enumerate_parent_choices(const Model& split,
                                                   const std::vector<std::size_t>& target_nodes);

struct Extension {
  Model model;         // fully directed
  GroundModel ground;  // its grounding
  bool per_tuple = false;  // orientation needed single-tuple parfactors
};

/// Orients the factors at each target as the choice demands and completes
/// the remaining undirected parfactors without creating a directed cycle or
/// a collider between non-adjacent nodes. Tries one orientation per
/// parfactor first, then per grounding. nullopt when no completion exists.
std::optional<Extension> orient_and_extend(const Model& split, const std::vector<std::size_t>& target_nodes,
                                           const ParentChoice& choice);

/// Marginal tables over parent families, shared between extensions of the
/// same joint distribution.
class FamilyCache {
 public:
  explicit FamilyCache(const GroundModel& gm) : gm_(&gm) {}
  TableFactor family(const std::vector<std::size_t>& sorted_vars);

 private:
  const GroundModel* gm_;
  std::mutex mu_;
  std::map<std::vector<std::size_t>, TableFactor> tables_;
};

/// Post-intervention distribution of `query` in a fully directed ground
/// model with `clamp` (atom, value) pairs: the truncated factorisation,
/// evaluated by variable elimination over P(r | pa(r)) of the non-target
/// ancestors of the query.
Distribution post_intervention_distribution(const GroundModel& full,
                                            const std::vector<std::pair<std::size_t, std::size_t>>& clamp,
                                            const std::vector<std::size_t>& query, FamilyCache* cache = nullptr);
Distribution post_intervention_distribution(const Model& full, const DoQuery& dq);

/// Ground (atom, value) pairs of the targets.
std::vector<std::pair<std::size_t, std::size_t>> clamped_atoms(const Model& m, const GroundModel& gm,
                                                               const std::vector<InterventionTarget>& targets);

/// Query atom indices; throws UnknownAtom.
std::vector<std::size_t> query_atoms(const GroundModel& gm, const DoQuery& dq);

/// Throws UnknownAtom, QueryTargetOverlap or std::invalid_argument for a
/// value outside the target's range.
void check_do_query(const Model& m, const DoQuery& dq);

/// Largest absolute difference; infinity when shapes differ.
double linf_distance(const Distribution& a, const Distribution& b);

/// Groups equal distributions (L∞ ≤ tol), keeping first-seen order.
void add_result(std::vector<DoResult>& results, Distribution d, ChoiceLabel label, double tol = 1e-9);

/// The full pipeline: split, enumerate parent choices, extend, evaluate,
/// deduplicate. Choices are evaluated in parallel (LIFTDO_THREADS caps the
/// worker count); the result order follows the choice order.
DoAnswer lifted_do_query(const Model& m, const DoQuery& dq);

std::size_t worker_count(std::size_t jobs);

}  // namespace liftdo
