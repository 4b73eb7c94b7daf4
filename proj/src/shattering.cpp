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

#include "liftdo/shattering.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

namespace liftdo {

std::vector<Tuple> target_groundings(const Model& m, const TargetSpec& t) {
  if (t.prv >= m.prvs.size()) throw LookupError("unknown PRV in intervention target");
  if (!t.groundings) return m.groundings(t.prv);
  const auto& params = m.prvs[t.prv].params;
  std::vector<Tuple> out = *t.groundings;
  for (const auto& g : out) {
    bool ok = g.size() == params.size();
    for (std::size_t i = 0; ok && i < g.size(); ++i) ok = g[i] < m.logvars[params[i]].domain.size();
    if (!ok) throw LookupError("grounding outside the domain of " + m.prvs[t.prv].name);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

std::string unique_name(const Model& m, const std::vector<Parfactor>& fresh, std::string name) {
  auto taken = [&](const std::string& s) {
    if (m.find_parfactor(s)) return true;
    return std::any_of(fresh.begin(), fresh.end(), [&](const Parfactor& g) { return g.name == s; });
  };
  while (taken(name)) name += '\'';
  return name;
}

Parfactor with_tuples(const Parfactor& g, std::vector<Tuple> tuples) {
  Parfactor out = g;
  std::sort(tuples.begin(), tuples.end());
  out.constraint.tuples = std::move(tuples);
  return out;
}

}  // namespace

Model split_on_atoms(const Model& m, const std::vector<TargetSpec>& targets) {
  std::vector<std::set<GroundAtom>> atoms;
  for (const auto& t : targets) {
    std::set<GroundAtom> s;
    for (auto& g : target_groundings(m, t)) s.insert(GroundAtom{t.prv, g});
    atoms.push_back(std::move(s));
  }
  Model out = m;
  out.parfactors.clear();
  for (const auto& g : m.parfactors) {
    bool touched = false;
    for (const auto& a : g.args) {
      for (const auto& t : targets) touched = touched || t.prv == a.prv;
    }
    if (!touched) {
      out.parfactors.push_back(g);
      continue;
    }
    // Group tuples by the set of targets their grounding mentions.
    std::map<std::vector<std::size_t>, std::vector<Tuple>> groups;
    for (auto& tuple : m.tuples(g.constraint)) {
      std::vector<std::size_t> hit;
      for (std::size_t pos = 0; pos < g.args.size(); ++pos) {
        GroundAtom atom{g.args[pos].prv, m.project(g, pos, tuple)};
        for (std::size_t k = 0; k < atoms.size(); ++k) {
          if (atoms[k].count(atom)) hit.push_back(k);
        }
      }
      std::sort(hit.begin(), hit.end());
      hit.erase(std::unique(hit.begin(), hit.end()), hit.end());
      groups[hit].push_back(std::move(tuple));
    }
    if (groups.size() == 1) {
      out.parfactors.push_back(g);
      continue;
    }
    std::vector<Parfactor> parts;
    auto rest = groups.find({});
    if (rest != groups.end()) parts.push_back(with_tuples(g, rest->second));
    std::string name = g.name;
    for (auto& [hit, tuples] : groups) {
      if (hit.empty()) continue;
      name += '\'';
      auto part = with_tuples(g, tuples);
      part.name = unique_name(m, out.parfactors, name);
      name = part.name;
      parts.push_back(std::move(part));
    }
    if (rest == groups.end()) parts.front().name = g.name;
    for (auto& p : parts) out.parfactors.push_back(std::move(p));
  }
  return out;
}

Model split_to_ground(const Model& m, const std::vector<std::size_t>& parfactors) {
  std::set<std::size_t> which(parfactors.begin(), parfactors.end());
  Model out = m;
  out.parfactors.clear();
  for (std::size_t i = 0; i < m.parfactors.size(); ++i) {
    const auto& g = m.parfactors[i];
    auto tuples = m.tuples(g.constraint);
    if (!which.count(i) || (tuples.size() == 1 && g.constraint.logvars.empty())) {
      out.parfactors.push_back(g);
      continue;
    }
    for (auto& t : tuples) {
      auto part = with_tuples(g, {t});
      std::string name = g.name;
      for (std::size_t j = 0; j < t.size(); ++j) name += "_" + m.logvars[g.constraint.logvars[j]].domain[t[j]];
      part.name = unique_name(m, out.parfactors, name);
      out.parfactors.push_back(std::move(part));
    }
  }
  return out;
}

Model ground_as_model(const Model& m) {
  std::vector<std::size_t> all(m.parfactors.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return split_to_ground(m, all);
}

}  // namespace liftdo
