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
#include <string>
#include <vector>

#include "liftdo/model.hpp"

namespace liftdo {

/// A variable node of the lifted graph: a PRV restricted to a block of its
/// groundings. Blocks are the connected components of the "appear together
/// in one argument projection" relation, so an unsplit model has one node per
/// PRV and splitting gives intervened instances dedicated nodes.
struct VariableNode {
  std::size_t prv = 0;
  std::vector<Tuple> groundings;  // sorted
};

struct NodeEdge {
  std::size_t parfactor = 0;
  std::size_t position = 0;
};

class LiftedGraph {
 public:
  explicit LiftedGraph(const Model& model);

  const Model& model() const { return *model_; }
  const std::vector<VariableNode>& nodes() const { return nodes_; }
  std::size_t size() const { return nodes_.size(); }

  std::size_t node_of(std::size_t parfactor, std::size_t position) const {
    return arg_node_[parfactor][position];
  }
  std::optional<std::size_t> node_of_atom(const GroundAtom& atom) const;
  std::vector<std::size_t> nodes_of_prv(std::size_t prv) const;
  const std::vector<NodeEdge>& edges(std::size_t node) const { return edges_[node]; }

  // Pa, Ch and Ne on nodes. Ne only considers parfactors without a CHILD.
  std::vector<std::size_t> parents(std::size_t node) const;
  std::vector<std::size_t> children(std::size_t node) const;
  std::vector<std::size_t> neighbours(std::size_t node) const;

  /// True when some parfactor has arguments on both nodes, in any direction.
  bool connected(std::size_t a, std::size_t b) const;

  /// "Rev", "Comp(alice)", "Comp(E)" for a full block, otherwise
  /// "Comp(E)|{bob,charlie}".
  std::string node_name(std::size_t node) const;

 private:
  const Model* model_;
  std::vector<VariableNode> nodes_;
  std::vector<std::vector<std::size_t>> arg_node_;
  std::vector<std::vector<NodeEdge>> edges_;
};

// PRV-level adjacency; results are sorted PRV indices. Throw LookupError on an
// out-of-range PRV.
std::vector<std::size_t> parents(const Model& model, std::size_t prv);
std::vector<std::size_t> children(const Model& model, std::size_t prv);
std::vector<std::size_t> neighbours(const Model& model, std::size_t prv);

}  // namespace liftdo
