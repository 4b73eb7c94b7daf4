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

#include "liftdo/lifted_graph.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace liftdo {

namespace {

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

std::vector<std::size_t> sorted_unique(std::vector<std::size_t> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

LiftedGraph::LiftedGraph(const Model& model) : model_(&model) {
  const auto& m = model;
  // Per PRV: union-find over groundings, joined whenever two groundings occur
  // in the projection of one parfactor argument.
  std::vector<std::vector<Tuple>> ground(m.prvs.size());
  std::vector<std::map<Tuple, std::size_t>> index(m.prvs.size());
  std::vector<UnionFind> uf;
  for (std::size_t p = 0; p < m.prvs.size(); ++p) {
    ground[p] = m.groundings(p);
    for (std::size_t i = 0; i < ground[p].size(); ++i) index[p][ground[p][i]] = i;
    uf.emplace_back(ground[p].size());
  }
  std::vector<std::vector<std::size_t>> arg_rep(m.parfactors.size());
  std::vector<std::vector<bool>> touched(m.prvs.size());
  for (std::size_t p = 0; p < m.prvs.size(); ++p) touched[p].assign(ground[p].size(), false);

  for (std::size_t gi = 0; gi < m.parfactors.size(); ++gi) {
    const auto& g = m.parfactors[gi];
    auto tuples = m.tuples(g.constraint);
    arg_rep[gi].assign(g.args.size(), 0);
    for (std::size_t pos = 0; pos < g.args.size(); ++pos) {
      const auto prv = g.args[pos].prv;
      std::optional<std::size_t> first;
      for (const auto& t : tuples) {
        auto it = index[prv].find(m.project(g, pos, t));
        if (it == index[prv].end()) continue;
        touched[prv][it->second] = true;
        if (first) {
          uf[prv].unite(*first, it->second);
        } else {
          first = it->second;
        }
      }
      arg_rep[gi][pos] = first.value_or(0);
    }
  }

  // Untouched groundings form one extra block per PRV.
  std::vector<std::map<std::size_t, std::size_t>> block_node(m.prvs.size());
  for (std::size_t p = 0; p < m.prvs.size(); ++p) {
    std::optional<std::size_t> untouched_root;
    for (std::size_t i = 0; i < ground[p].size(); ++i) {
      if (touched[p][i]) continue;
      if (untouched_root) {
        uf[p].parent[i] = *untouched_root;
      } else {
        untouched_root = i;
      }
    }
    for (std::size_t i = 0; i < ground[p].size(); ++i) {
      auto root = uf[p].find(i);
      auto [it, inserted] = block_node[p].try_emplace(root, nodes_.size());
      if (inserted) nodes_.push_back({p, {}});
      nodes_[it->second].groundings.push_back(ground[p][i]);
    }
  }

  arg_node_.resize(m.parfactors.size());
  edges_.resize(nodes_.size());
  for (std::size_t gi = 0; gi < m.parfactors.size(); ++gi) {
    const auto& g = m.parfactors[gi];
    arg_node_[gi].resize(g.args.size());
    for (std::size_t pos = 0; pos < g.args.size(); ++pos) {
      const auto prv = g.args[pos].prv;
      auto root = uf[prv].find(arg_rep[gi][pos]);
      auto node = block_node[prv].at(root);
      arg_node_[gi][pos] = node;
      edges_[node].push_back({gi, pos});
    }
  }
}

std::optional<std::size_t> LiftedGraph::node_of_atom(const GroundAtom& atom) const {
  for (std::size_t n = 0; n < nodes_.size(); ++n) {
    if (nodes_[n].prv != atom.prv) continue;
    if (std::binary_search(nodes_[n].groundings.begin(), nodes_[n].groundings.end(), atom.args)) {
      return n;
    }
  }
  return std::nullopt;
}

std::vector<std::size_t> LiftedGraph::nodes_of_prv(std::size_t prv) const {
  std::vector<std::size_t> out;
  for (std::size_t n = 0; n < nodes_.size(); ++n) {
    if (nodes_[n].prv == prv) out.push_back(n);
  }
  return out;
}

std::vector<std::size_t> LiftedGraph::parents(std::size_t node) const {
  std::vector<std::size_t> out;
  for (const auto& e : edges_.at(node)) {
    const auto& g = model_->parfactors[e.parfactor];
    if (g.args[e.position].dir != EdgeDir::kChild) continue;
    for (std::size_t pos = 0; pos < g.args.size(); ++pos) {
      if (pos != e.position) out.push_back(arg_node_[e.parfactor][pos]);
    }
  }
  return sorted_unique(std::move(out));
}

std::vector<std::size_t> LiftedGraph::children(std::size_t node) const {
  std::vector<std::size_t> out;
  for (const auto& e : edges_.at(node)) {
    const auto& g = model_->parfactors[e.parfactor];
    if (g.args[e.position].dir == EdgeDir::kChild) continue;
    for (std::size_t pos = 0; pos < g.args.size(); ++pos) {
      if (g.args[pos].dir == EdgeDir::kChild) out.push_back(arg_node_[e.parfactor][pos]);
    }
  }
  return sorted_unique(std::move(out));
}

std::vector<std::size_t> LiftedGraph::neighbours(std::size_t node) const {
  std::vector<std::size_t> out;
  for (const auto& e : edges_.at(node)) {
    const auto& g = model_->parfactors[e.parfactor];
    if (!g.fully_undirected()) continue;
    for (std::size_t pos = 0; pos < g.args.size(); ++pos) {
      auto other = arg_node_[e.parfactor][pos];
      if (other != node) out.push_back(other);
    }
  }
  return sorted_unique(std::move(out));
}

bool LiftedGraph::connected(std::size_t a, std::size_t b) const {
  for (const auto& e : edges_.at(a)) {
    const auto& row = arg_node_[e.parfactor];
    for (std::size_t pos = 0; pos < row.size(); ++pos) {
      if (pos != e.position && row[pos] == b) return true;
    }
  }
  return false;
}

std::string LiftedGraph::node_name(std::size_t node) const {
  const auto& n = nodes_.at(node);
  const auto& m = *model_;
  if (n.groundings.size() == 1) return m.atom_name({n.prv, n.groundings.front()});
  auto sig = m.prv_signature(n.prv);
  if (n.groundings.size() == m.tuple_count(Constraint{m.prvs[n.prv].params, std::nullopt})) return sig;
  std::string s = sig + "|{";
  for (std::size_t i = 0; i < n.groundings.size(); ++i) {
    if (i) s += ',';
    const auto& t = n.groundings[i];
    if (t.size() > 1) s += '(';
    for (std::size_t j = 0; j < t.size(); ++j) {
      if (j) s += ',';
      s += m.logvars[m.prvs[n.prv].params[j]].domain[t[j]];
    }
    if (t.size() > 1) s += ')';
  }
  return s + "}";
}

namespace {

void check_prv(const Model& m, std::size_t prv) {
  if (prv >= m.prvs.size()) throw LookupError("unknown PRV index " + std::to_string(prv));
}

}  // namespace

std::vector<std::size_t> parents(const Model& m, std::size_t prv) {
  check_prv(m, prv);
  std::vector<std::size_t> out;
  for (const auto& g : m.parfactors) {
    auto c = g.child();
    if (!c || g.args[*c].prv != prv) continue;
    for (std::size_t pos = 0; pos < g.args.size(); ++pos) {
      if (pos != *c) out.push_back(g.args[pos].prv);
    }
  }
  return sorted_unique(std::move(out));
}

std::vector<std::size_t> children(const Model& m, std::size_t prv) {
  check_prv(m, prv);
  std::vector<std::size_t> out;
  for (const auto& g : m.parfactors) {
    auto c = g.child();
    if (!c) continue;
    for (std::size_t pos = 0; pos < g.args.size(); ++pos) {
      if (pos != *c && g.args[pos].prv == prv) out.push_back(g.args[*c].prv);
    }
  }
  return sorted_unique(std::move(out));
}

std::vector<std::size_t> neighbours(const Model& m, std::size_t prv) {
  check_prv(m, prv);
  std::vector<std::size_t> out;
  for (const auto& g : m.parfactors) {
    if (!g.fully_undirected()) continue;
    bool present = std::any_of(g.args.begin(), g.args.end(),
                               [&](const Argument& a) { return a.prv == prv; });
    if (!present) continue;
    for (const auto& a : g.args) {
      if (a.prv != prv) out.push_back(a.prv);
    }
  }
  return sorted_unique(std::move(out));
}

}  // namespace liftdo
