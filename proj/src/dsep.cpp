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

#include "liftdo/dsep.hpp"

#include <algorithm>
#include <set>
#include <utility>

namespace liftdo {

void check_sep_query(const SepQuery& q) {
  if (q.x.empty() || q.y.empty()) throw std::invalid_argument("X and Y must be nonempty");
  std::set<std::size_t> seen;
  for (const auto* s : {&q.x, &q.y, &q.z}) {
    std::set<std::size_t> own(s->begin(), s->end());
    for (auto v : own) {
      if (!seen.insert(v).second) throw std::invalid_argument("X, Y and Z must be disjoint");
    }
  }
}

namespace {

// Marks every node with a directed path into `z` (including z itself).
std::vector<char> active_set(const std::vector<std::vector<std::size_t>>& succ, const std::vector<std::size_t>& z) {
  std::vector<std::vector<std::size_t>> pred(succ.size());
  for (std::size_t a = 0; a < succ.size(); ++a) {
    for (auto b : succ[a]) pred[b].push_back(a);
  }
  std::vector<char> active(succ.size(), 0);
  std::vector<std::size_t> stack(z.begin(), z.end());
  for (auto v : z) active[v] = 1;
  while (!stack.empty()) {
    auto v = stack.back();
    stack.pop_back();
    for (auto p : pred[v]) {
      if (!active[p]) {
        active[p] = 1;
        stack.push_back(p);
      }
    }
  }
  return active;
}

}  // namespace

std::vector<char> d_connected(const GroundModel& gm, const std::vector<std::size_t>& x,
                              const std::vector<std::size_t>& z) {
  const auto n = gm.size();
  for (const auto* s : {&x, &z}) {
    for (auto v : *s) {
      if (v >= n) throw LookupError("atom index outside model");
    }
  }
  std::vector<char> in_z(n, 0), reached(n, 0);
  for (auto v : z) in_z[v] = 1;
  for (auto v : x) {
    if (in_z[v]) throw std::invalid_argument("X and Z must be disjoint");
  }
  auto active = active_set(gm.successors(), z);

  // incident[v] = (factor, position) pairs.
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> incident(n);
  for (std::size_t f = 0; f < gm.factors.size(); ++f) {
    for (std::size_t p = 0; p < gm.factors[f].atoms.size(); ++p) incident[gm.factors[f].atoms[p]].emplace_back(f, p);
  }
  auto is_child = [&](std::size_t f, std::size_t p) {
    return gm.factors[f].child_index && *gm.factors[f].child_index == p;
  };

  // Ball at factor f having arrived through position p; ball at variable v
  // having arrived through its k-th incident edge.
  std::set<std::pair<std::size_t, std::size_t>> at_factor, at_var;
  std::vector<std::pair<std::size_t, std::size_t>> work;

  auto leave_var = [&](std::size_t v, std::optional<std::size_t> arrived) {
    for (std::size_t k = 0; k < incident[v].size(); ++k) {
      auto [f, p] = incident[v][k];
      if (arrived) {
        auto [f1, p1] = incident[v][*arrived];
        if (f1 == f) continue;
        bool collider = is_child(f1, p1) && is_child(f, p);
        if (collider ? !active[v] : in_z[v]) continue;
      }
      if (at_factor.insert({f, p}).second) work.emplace_back(f, p);
    }
  };

  for (auto v : x) leave_var(v, std::nullopt);
  while (!work.empty()) {
    auto [f, p] = work.back();
    work.pop_back();
    const auto& gf = gm.factors[f];
    for (std::size_t w = 0; w < gf.atoms.size(); ++w) {
      if (w == p || gf.atoms[w] == gf.atoms[p]) continue;
      if (gf.child_index && *gf.child_index != p && *gf.child_index != w && !active[gf.child_atom()]) continue;
      const auto v = gf.atoms[w];
      reached[v] = 1;
      std::size_t k = 0;
      while (incident[v][k] != std::make_pair(f, w)) ++k;
      if (at_var.insert({v, k}).second) leave_var(v, k);
    }
  }
  return reached;
}

bool d_separated(const GroundModel& gm, const SepQuery& q) {
  check_sep_query(q);
  for (auto v : q.y) {
    if (v >= gm.size()) throw LookupError("atom index outside model");
  }
  auto reached = d_connected(gm, q.x, q.z);
  return std::none_of(q.y.begin(), q.y.end(), [&](std::size_t v) { return reached[v] != 0; });
}

bool d_separated_lifted(const Model& m, const SepQuery& q) {
  check_sep_query(q);
  for (const auto* s : {&q.x, &q.y, &q.z}) {
    for (auto v : *s) {
      if (v >= m.prvs.size()) throw LookupError("PRV index outside model");
    }
  }
  for (const auto& g : m.parfactors) {
    if (!g.constraint.is_top()) throw UnsupportedLiftedQuery("lifted d-separation needs unconstrained parfactors");
  }
  const auto n = m.prvs.size();
  std::vector<std::vector<std::size_t>> succ(n);
  for (const auto& g : m.parfactors) {
    auto c = g.child();
    if (!c) continue;
    for (std::size_t p = 0; p < g.args.size(); ++p) {
      if (p != *c) succ[g.args[p].prv].push_back(g.args[*c].prv);
    }
  }
  auto active = active_set(succ, q.z);
  std::vector<char> in_z(n, 0), in_y(n, 0);
  for (auto v : q.z) in_z[v] = 1;
  for (auto v : q.y) in_y[v] = 1;

  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> incident(n);
  for (std::size_t g = 0; g < m.parfactors.size(); ++g) {
    for (std::size_t p = 0; p < m.parfactors[g].args.size(); ++p) incident[m.parfactors[g].args[p].prv].emplace_back(g, p);
  }
  auto is_child = [&](std::size_t g, std::size_t p) {
    auto c = m.parfactors[g].child();
    return c && *c == p;
  };
  // Number of groundings of g sharing one grounding of argument p.
  auto multiplicity = [&](std::size_t g, std::size_t p) {
    const auto& pf = m.parfactors[g];
    std::size_t k = 1;
    for (auto lv : m.parfactor_logvars(pf)) {
      const auto& own = pf.args[p].logvars;
      if (std::find(own.begin(), own.end(), lv) == own.end()) k *= m.logvars[lv].domain.size();
    }
    return k;
  };

  std::set<std::pair<std::size_t, std::size_t>> at_factor, at_var;
  std::vector<std::pair<std::size_t, std::size_t>> work;
  auto leave_var = [&](std::size_t v, std::optional<std::size_t> arrived) {
    for (std::size_t k = 0; k < incident[v].size(); ++k) {
      auto [g, p] = incident[v][k];
      if (arrived) {
        auto [g1, p1] = incident[v][*arrived];
        if (k == *arrived && multiplicity(g, p) < 2) continue;
        bool collider = is_child(g1, p1) && is_child(g, p);
        if (collider ? !active[v] : in_z[v]) continue;
      }
      if (at_factor.insert({g, p}).second) work.emplace_back(g, p);
    }
  };

  for (auto x : q.x) leave_var(x, std::nullopt);
  while (!work.empty()) {
    auto [g, p] = work.back();
    work.pop_back();
    const auto& pf = m.parfactors[g];
    auto c = pf.child();
    for (std::size_t w = 0; w < pf.args.size(); ++w) {
      if (w == p) continue;
      if (c && *c != p && *c != w && !active[pf.args[*c].prv]) continue;
      const auto v = pf.args[w].prv;
      if (in_y[v]) return false;
      std::size_t k = 0;
      while (incident[v][k] != std::make_pair(g, w)) ++k;
      if (at_var.insert({v, k}).second) leave_var(v, k);
    }
  }
  return true;
}

}  // namespace liftdo
