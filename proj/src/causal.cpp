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

#include "liftdo/causal.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <set>
#include <thread>

namespace liftdo {

namespace {

bool valid_atom(const Model& m, const GroundAtom& a) {
  if (a.prv >= m.prvs.size()) return false;
  const auto& params = m.prvs[a.prv].params;
  if (a.args.size() != params.size()) return false;
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (a.args[i] >= m.logvars[params[i]].domain.size()) return false;
  }
  return true;
}

std::vector<GroundAtom> atoms_of(const Model& m, const TargetSpec& t) {
  std::vector<GroundAtom> out;
  for (auto& g : target_groundings(m, t)) out.push_back({t.prv, g});
  return out;
}

}  // namespace

void check_do_query(const Model& m, const DoQuery& dq) {
  if (dq.query.empty()) throw std::invalid_argument("query needs at least one atom");
  std::set<GroundAtom> query;
  for (const auto& q : dq.query) {
    if (!valid_atom(m, q)) throw UnknownAtom("unknown query atom");
    if (!query.insert(q).second) throw std::invalid_argument("query atom repeated: " + m.atom_name(q));
  }
  std::set<GroundAtom> seen;
  for (const auto& t : dq.targets) {
    if (t.target.prv >= m.prvs.size()) throw UnknownAtom("unknown intervention target");
    std::vector<GroundAtom> atoms;
    try {
      atoms = atoms_of(m, t.target);
    } catch (const LookupError& e) {
      throw UnknownAtom(e.what());
    }
    if (atoms.empty()) throw std::invalid_argument("intervention target covers no groundings");
    if (t.value >= m.prvs[t.target.prv].range.size()) throw std::invalid_argument("intervention value outside range");
    for (const auto& a : atoms) {
      if (query.count(a)) throw QueryTargetOverlap("query atom " + m.atom_name(a) + " is also intervened on");
      if (!seen.insert(a).second) throw QueryTargetOverlap("atom " + m.atom_name(a) + " is intervened on twice");
    }
  }
}

namespace {

// Every grounding of the target lies in one node equal to the target, each
// grounding meets every incident parfactor equally often, and no undirected
// parfactor links the node to itself.
bool interchangeable(const Model& m, const LiftedGraph& lg, std::size_t prv, const std::vector<Tuple>& gs) {
  auto node = lg.node_of_atom({prv, gs.front()});
  if (!node || lg.nodes()[*node].groundings != gs) return false;
  std::map<std::size_t, int> undirected_hits;
  for (const auto& e : lg.edges(*node)) {
    const auto& g = m.parfactors[e.parfactor];
    std::map<Tuple, std::size_t> counts;
    for (const auto& t : m.tuples(g.constraint)) ++counts[m.project(g, e.position, t)];
    if (counts.size() != gs.size()) return false;
    for (const auto& [_, c] : counts) {
      if (c != counts.begin()->second) return false;
    }
    if (g.fully_undirected() && ++undirected_hits[e.parfactor] > 1) return false;
  }
  return true;
}

struct PendingTarget {
  TargetSpec spec;
  std::size_t value;
  bool lifted;
};

std::vector<PendingTarget> per_atom(const Model& m, const PendingTarget& t) {
  std::vector<PendingTarget> out;
  for (auto& g : target_groundings(m, t.spec)) out.push_back({TargetSpec{t.spec.prv, std::vector<Tuple>{g}}, t.value, false});
  return out;
}

}  // namespace

PreparedQuery prepare_do_query(const Model& m, const DoQuery& dq) {
  check_do_query(m, dq);
  std::vector<PendingTarget> ts;
  for (const auto& t : dq.targets) {
    auto gs = target_groundings(m, t.target);
    if (gs.size() == 1) {
      ts.push_back({TargetSpec{t.target.prv, gs}, t.value, false});
    } else {
      ts.push_back({TargetSpec{t.target.prv, gs}, t.value, true});
    }
  }
  Model base = m;
  bool grounded = false;
  std::set<GroundAtom> extra;
  for (;;) {
    std::vector<TargetSpec> specs;
    for (const auto& t : ts) specs.push_back(t.spec);
    for (const auto& a : extra) specs.push_back(TargetSpec{a.prv, std::vector<Tuple>{a.args}});
    Model split = split_on_atoms(base, specs);
    LiftedGraph lg(split);

    bool changed = false;
    bool stuck = false;
    for (std::size_t i = 0; i < ts.size() && !changed; ++i) {
      if (!ts[i].lifted) continue;
      if (!interchangeable(split, lg, ts[i].spec.prv, *ts[i].spec.groundings)) {
        auto atoms = per_atom(split, ts[i]);
        ts.erase(ts.begin() + static_cast<std::ptrdiff_t>(i));
        ts.insert(ts.begin() + static_cast<std::ptrdiff_t>(i), atoms.begin(), atoms.end());
        changed = true;
      }
    }
    for (std::size_t i = 0; i < ts.size() && !changed && !stuck; ++i) {
      if (ts[i].lifted) continue;
      GroundAtom atom{ts[i].spec.prv, ts[i].spec.groundings->front()};
      auto node = *lg.node_of_atom(atom);
      if (lg.nodes()[node].groundings.size() != 1) {
        stuck = true;
        break;
      }
      for (auto nb : lg.neighbours(node)) {
        const auto& vn = lg.nodes()[nb];
        if (vn.groundings.size() < 2) continue;
        for (std::size_t j = 0; j < ts.size(); ++j) {
          if (ts[j].lifted && lg.node_of_atom({ts[j].spec.prv, ts[j].spec.groundings->front()}) == nb) {
            auto atoms = per_atom(split, ts[j]);
            ts.erase(ts.begin() + static_cast<std::ptrdiff_t>(j));
            ts.insert(ts.begin() + static_cast<std::ptrdiff_t>(j), atoms.begin(), atoms.end());
            changed = true;
            break;
          }
        }
        if (changed) break;
        bool added = false;
        for (const auto& g : vn.groundings) added = extra.insert({vn.prv, g}).second || added;
        if (!added) {
          stuck = true;
          break;
        }
        changed = true;
      }
    }
    if (stuck) {
      if (grounded) throw std::logic_error("could not isolate intervention targets");
      // Fall back to the ground graph, where every node is a single atom.
      base = ground_as_model(m);
      grounded = true;
      std::vector<PendingTarget> flat;
      for (const auto& t : ts) {
        auto atoms = t.lifted ? per_atom(m, t) : std::vector<PendingTarget>{t};
        flat.insert(flat.end(), atoms.begin(), atoms.end());
      }
      ts = std::move(flat);
      extra.clear();
      continue;
    }
    if (changed) continue;

    PreparedQuery out;
    out.model = std::move(split);
    LiftedGraph final_graph(out.model);
    for (const auto& t : ts) {
      auto node = *final_graph.node_of_atom({t.spec.prv, t.spec.groundings->front()});
      out.targets.push_back(t.spec);
      out.target_values.push_back(t.value);
      out.target_nodes.push_back(node);
      out.target_names.push_back(final_graph.node_name(node));
    }
    return out;
  }
}

bool uniquely_identifiable(const Model& m, const DoQuery& dq) {
  auto prep = prepare_do_query(m, dq);
  LiftedGraph lg(prep.model);
  return std::all_of(prep.target_nodes.begin(), prep.target_nodes.end(),
                     [&](std::size_t n) { return lg.neighbours(n).empty(); });
}

std::vector<ParentChoice> enumerate_parent_choices(const Model& split, const std::vector<std::size_t>& target_nodes) {
  LiftedGraph lg(split);
  std::vector<std::vector<std::vector<std::size_t>>> per_target;
  for (auto t : target_nodes) {
    auto ne = lg.neighbours(t);
    if (ne.size() > 24) throw std::length_error("too many undirected neighbours to enumerate");
    std::vector<std::vector<std::size_t>> subsets;
    for (std::size_t mask = 0; mask < (std::size_t{1} << ne.size()); ++mask) {
      std::vector<std::size_t> s;
      for (std::size_t b = 0; b < ne.size(); ++b) {
        if (mask >> b & 1) s.push_back(ne[b]);
      }
      bool clique = true;
      for (std::size_t i = 0; clique && i < s.size(); ++i) {
        for (std::size_t j = i + 1; clique && j < s.size(); ++j) clique = lg.connected(s[i], s[j]);
      }
      if (clique) subsets.push_back(std::move(s));
    }
    per_target.push_back(std::move(subsets));
  }
  std::vector<ParentChoice> out;
  std::vector<std::size_t> idx(per_target.size(), 0);
  for (;;) {
    ParentChoice c;
    for (std::size_t i = 0; i < per_target.size(); ++i) {
      auto s = per_target[i][idx[i]];
      std::sort(s.begin(), s.end());
      c.parents.push_back(std::move(s));
    }
    out.push_back(std::move(c));
    std::size_t k = per_target.size();
    while (k > 0 && ++idx[k - 1] == per_target[k - 1].size()) {
      idx[k - 1] = 0;
      --k;
    }
    if (k == 0) break;
  }
  return out;
}

namespace {

// Validity of a (partial) orientation of a ground model. child[f] is the
// CHILD position of ground factor f or -1 while undecided.
class OrientationCheck {
 public:
  explicit OrientationCheck(const GroundModel& gm) : gm_(gm), n_(gm.size()) {
    for (const auto& f : gm.factors) {
      std::vector<std::size_t> d = f.atoms;
      std::sort(d.begin(), d.end());
      d.erase(std::unique(d.begin(), d.end()), d.end());
      distinct_.push_back(std::move(d));
      input_undirected_.push_back(!f.has_child());
    }
  }

  bool ok(const std::vector<int>& child) const {
    const auto nf = gm_.factors.size();
    std::vector<char> adj(n_ * n_, 0);
    auto link = [&](std::size_t a, std::size_t b) {
      adj[a * n_ + b] = 1;
      adj[b * n_ + a] = 1;
    };
    std::vector<std::vector<std::size_t>> by_child(n_);
    std::vector<std::vector<std::size_t>> succ(n_);
    for (std::size_t f = 0; f < nf; ++f) {
      const auto& d = distinct_[f];
      if (child[f] < 0) {
        for (std::size_t i = 0; i < d.size(); ++i) {
          for (std::size_t j = i + 1; j < d.size(); ++j) link(d[i], d[j]);
        }
        continue;
      }
      auto c = gm_.factors[f].atoms[static_cast<std::size_t>(child[f])];
      for (auto a : d) {
        if (a == c) continue;
        link(a, c);
        succ[a].push_back(c);
      }
      if (d.size() > 1) by_child[c].push_back(f);
    }
    if (has_cycle(succ)) return false;
    auto parents_of = [&](std::size_t f, std::size_t c) {
      std::vector<std::size_t> p;
      for (auto a : distinct_[f]) {
        if (a != c) p.push_back(a);
      }
      return p;
    };
    for (std::size_t v = 0; v < n_; ++v) {
      const auto& fs = by_child[v];
      for (std::size_t i = 0; i < fs.size(); ++i) {
        auto pi = parents_of(fs[i], v);
        if (input_undirected_[fs[i]]) {
          for (std::size_t a = 0; a < pi.size(); ++a) {
            for (std::size_t b = a + 1; b < pi.size(); ++b) {
              if (!adj[pi[a] * n_ + pi[b]]) return false;
            }
          }
        }
        for (std::size_t j = i + 1; j < fs.size(); ++j) {
          if (!input_undirected_[fs[i]] && !input_undirected_[fs[j]]) continue;
          for (auto a : pi) {
            for (auto b : parents_of(fs[j], v)) {
              if (a != b && !adj[a * n_ + b]) return false;
            }
          }
        }
      }
    }
    return true;
  }

 private:
  bool has_cycle(const std::vector<std::vector<std::size_t>>& succ) const {
    std::vector<std::size_t> indeg(n_, 0);
    for (const auto& s : succ) {
      for (auto b : s) ++indeg[b];
    }
    std::vector<std::size_t> stack;
    for (std::size_t i = 0; i < n_; ++i) {
      if (indeg[i] == 0) stack.push_back(i);
    }
    std::size_t seen = 0;
    while (!stack.empty()) {
      auto v = stack.back();
      stack.pop_back();
      ++seen;
      for (auto b : succ[v]) {
        if (--indeg[b] == 0) stack.push_back(b);
      }
    }
    return seen != n_;
  }

  const GroundModel& gm_;
  std::size_t n_;
  std::vector<std::vector<std::size_t>> distinct_;
  std::vector<bool> input_undirected_;
};

struct Unit {
  std::vector<std::size_t> factors;  // ground factors sharing one CHILD position
  std::vector<std::size_t> domain;   // allowed CHILD positions
};

class OrientationSearch {
 public:
  OrientationSearch(const GroundModel& gm, std::vector<Unit> units)
      : check_(gm), units_(std::move(units)), child_(gm.factors.size(), -1) {
    for (std::size_t f = 0; f < gm.factors.size(); ++f) {
      if (gm.factors[f].child_index) child_[f] = static_cast<int>(*gm.factors[f].child_index);
    }
  }

  std::optional<std::vector<int>> solve() {
    std::vector<std::vector<std::size_t>> domains;
    for (const auto& u : units_) domains.push_back(u.domain);
    if (!check_.ok(child_)) return std::nullopt;
    if (!filter(0, domains)) return std::nullopt;
    if (!dfs(0, domains)) return std::nullopt;
    return child_;
  }

 private:
  void assign(std::size_t u, int pos) {
    for (auto f : units_[u].factors) child_[f] = pos;
  }

  // Drops values of units >= from that are invalid given the current
  // assignment; false if some domain empties.
  bool filter(std::size_t from, std::vector<std::vector<std::size_t>>& domains) {
    for (std::size_t v = from; v < units_.size(); ++v) {
      std::vector<std::size_t> keep;
      for (auto pos : domains[v]) {
        assign(v, static_cast<int>(pos));
        if (check_.ok(child_)) keep.push_back(pos);
        assign(v, -1);
      }
      if (keep.empty()) return false;
      domains[v] = std::move(keep);
    }
    return true;
  }

  bool dfs(std::size_t u, const std::vector<std::vector<std::size_t>>& domains) {
    if (u == units_.size()) return true;
    for (auto pos : domains[u]) {
      assign(u, static_cast<int>(pos));
      if (check_.ok(child_)) {
        auto next = domains;
        if (filter(u + 1, next) && dfs(u + 1, next)) return true;
      }
    }
    assign(u, -1);
    return false;
  }

  OrientationCheck check_;
  std::vector<Unit> units_;
  std::vector<int> child_;
};

bool multi_atom(const GroundFactor& f) {
  return std::any_of(f.atoms.begin(), f.atoms.end(), [&](std::size_t a) { return a != f.atoms.front(); });
}

}  // namespace

std::optional<Extension> orient_and_extend(const Model& split, const std::vector<std::size_t>& target_nodes,
                                           const ParentChoice& choice) {
  if (choice.parents.size() != target_nodes.size()) throw std::invalid_argument("choice does not match targets");
  LiftedGraph lg(split);
  const auto np = split.parfactors.size();

  // Allowed CHILD positions per undirected parfactor.
  std::vector<std::optional<std::vector<std::size_t>>> allowed(np);
  for (std::size_t p = 0; p < np; ++p) {
    const auto& g = split.parfactors[p];
    if (!g.fully_undirected()) continue;
    std::vector<std::size_t> all(g.args.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    allowed[p] = all;
  }
  for (std::size_t i = 0; i < target_nodes.size(); ++i) {
    const auto t = target_nodes[i];
    std::set<std::size_t> chosen(choice.parents[i].begin(), choice.parents[i].end());
    for (std::size_t p = 0; p < np; ++p) {
      if (!allowed[p]) continue;
      std::vector<std::size_t> on_t, others;
      for (std::size_t pos = 0; pos < split.parfactors[p].args.size(); ++pos) {
        (lg.node_of(p, pos) == t ? on_t : others).push_back(pos);
      }
      if (on_t.empty() || others.empty()) continue;
      std::size_t in_c = 0;
      for (auto pos : others) in_c += chosen.count(lg.node_of(p, pos));
      std::vector<std::size_t> want;
      if (in_c == others.size()) {
        want = on_t;
      } else if (in_c == 0) {
        want = others;
      }
      std::vector<std::size_t> both;
      std::set_intersection(allowed[p]->begin(), allowed[p]->end(), want.begin(), want.end(), std::back_inserter(both));
      if (both.empty()) return std::nullopt;
      allowed[p] = both;
    }
  }

  GroundModel gm = ground(split);
  std::vector<std::vector<std::size_t>> factors_of(np);
  for (std::size_t f = 0; f < gm.factors.size(); ++f) factors_of[gm.factors[f].source].push_back(f);

  auto orient = [&](const std::vector<int>& child, bool per_tuple) {
    Extension ext;
    ext.per_tuple = per_tuple;
    std::vector<std::size_t> undirected;
    for (std::size_t p = 0; p < np; ++p) {
      if (allowed[p]) undirected.push_back(p);
    }
    if (!per_tuple) {
      ext.model = split;
      for (auto p : undirected) {
        auto& g = ext.model.parfactors[p];
        std::size_t pos = 0;
        for (auto f : factors_of[p]) {
          if (child[f] >= 0) {
            pos = static_cast<std::size_t>(child[f]);
            break;
          }
        }
        g.args[pos].dir = EdgeDir::kChild;
      }
    } else {
      ext.model = split_to_ground(split, undirected);
      std::size_t out = 0;
      for (std::size_t p = 0; p < np; ++p) {
        if (!allowed[p]) {
          ++out;
          continue;
        }
        const auto& g = split.parfactors[p];
        const auto count = (split.tuples(g.constraint).size() == 1 && g.constraint.logvars.empty())
                               ? std::size_t{1}
                               : factors_of[p].size();
        for (std::size_t k = 0; k < count; ++k, ++out) {
          int c = k < factors_of[p].size() ? child[factors_of[p][k]] : -1;
          ext.model.parfactors[out].args[c < 0 ? 0 : static_cast<std::size_t>(c)].dir = EdgeDir::kChild;
        }
      }
    }
    ext.ground = ground(ext.model);
    return ext;
  };

  std::vector<Unit> lifted_units;
  for (std::size_t p = 0; p < np; ++p) {
    if (!allowed[p]) continue;
    Unit u;
    for (auto f : factors_of[p]) {
      if (multi_atom(gm.factors[f])) u.factors.push_back(f);
    }
    if (u.factors.empty()) continue;
    u.domain = *allowed[p];
    lifted_units.push_back(std::move(u));
  }
  if (auto child = OrientationSearch(gm, lifted_units).solve()) return orient(*child, false);

  std::vector<Unit> tuple_units;
  for (const auto& lu : lifted_units) {
    for (auto f : lu.factors) tuple_units.push_back({{f}, lu.domain});
  }
  if (tuple_units.size() == lifted_units.size()) return std::nullopt;
  if (auto child = OrientationSearch(gm, tuple_units).solve()) return orient(*child, true);
  return std::nullopt;
}

TableFactor FamilyCache::family(const std::vector<std::size_t>& sorted_vars) {
  {
    std::lock_guard lock(mu_);
    auto it = tables_.find(sorted_vars);
    if (it != tables_.end()) return it->second;
  }
  auto t = joint_table(*gm_, sorted_vars);
  std::lock_guard lock(mu_);
  return tables_.emplace(sorted_vars, std::move(t)).first->second;
}

Distribution post_intervention_distribution(const GroundModel& full,
                                            const std::vector<std::pair<std::size_t, std::size_t>>& clamp,
                                            const std::vector<std::size_t>& query, FamilyCache* cache) {
  if (!full.fully_directed()) throw std::invalid_argument("post-intervention distribution needs a fully directed model");
  std::map<std::size_t, std::size_t> clamped(clamp.begin(), clamp.end());
  for (auto q : query) {
    if (clamped.count(q)) throw QueryTargetOverlap("query atom is intervened on");
  }
  // Non-target ancestors of the query in the mutilated graph.
  std::vector<char> relevant(full.size(), 0);
  std::vector<std::size_t> stack(query.begin(), query.end());
  std::vector<std::vector<std::size_t>> parents(full.size());
  for (auto q : query) relevant[q] = 1;
  while (!stack.empty()) {
    auto v = stack.back();
    stack.pop_back();
    if (clamped.count(v)) continue;
    parents[v] = full.parents(v);
    for (auto p : parents[v]) {
      if (!relevant[p]) {
        relevant[p] = 1;
        stack.push_back(p);
      }
    }
  }
  std::vector<TableFactor> factors;
  std::vector<std::size_t> cards(full.size());
  for (std::size_t i = 0; i < full.size(); ++i) cards[i] = full.cardinality(i);
  for (std::size_t v = 0; v < full.size(); ++v) {
    if (!relevant[v] || clamped.count(v)) continue;
    std::vector<std::size_t> fam = parents[v];
    fam.push_back(v);
    std::sort(fam.begin(), fam.end());
    auto joint = cache ? cache->family(fam) : joint_table(full, fam);
    auto cpt = conditional_table(joint, v);
    for (const auto& [a, val] : clamped) cpt = cpt.reduce(a, val);
    factors.push_back(std::move(cpt));
  }
  return to_distribution(full, joint_table(factors, query, cards), query);
}

std::vector<std::pair<std::size_t, std::size_t>> clamped_atoms(const Model& m, const GroundModel& gm,
                                                               const std::vector<InterventionTarget>& targets) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (const auto& t : targets) {
    for (const auto& a : atoms_of(m, t.target)) {
      auto idx = gm.find(a);
      if (!idx) throw UnknownAtom("intervention target not in the ground model");
      out.emplace_back(*idx, t.value);
    }
  }
  return out;
}

std::vector<std::size_t> query_atoms(const GroundModel& gm, const DoQuery& dq) {
  std::vector<std::size_t> out;
  for (const auto& q : dq.query) {
    auto idx = gm.find(q);
    if (!idx) throw UnknownAtom("query atom not in the ground model");
    out.push_back(*idx);
  }
  return out;
}

Distribution post_intervention_distribution(const Model& full, const DoQuery& dq) {
  check_do_query(full, dq);
  auto gm = ground(full);
  return post_intervention_distribution(gm, clamped_atoms(full, gm, dq.targets), query_atoms(gm, dq));
}

double linf_distance(const Distribution& a, const Distribution& b) {
  if (a.atoms != b.atoms || a.probs.size() != b.probs.size()) return std::numeric_limits<double>::infinity();
  double d = 0;
  for (std::size_t i = 0; i < a.probs.size(); ++i) d = std::max(d, std::abs(a.probs[i] - b.probs[i]));
  return d;
}

void add_result(std::vector<DoResult>& results, Distribution d, ChoiceLabel label, double tol) {
  for (auto& r : results) {
    if (linf_distance(r.distribution, d) <= tol) {
      if (std::find(r.choices.begin(), r.choices.end(), label) == r.choices.end()) r.choices.push_back(std::move(label));
      return;
    }
  }
  results.push_back({std::move(d), {std::move(label)}});
}

std::size_t worker_count(std::size_t jobs) {
  std::size_t n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("LIFTDO_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) n = static_cast<std::size_t>(v);
  }
  return std::max<std::size_t>(1, std::min(n, jobs));
}

DoAnswer lifted_do_query(const Model& m, const DoQuery& dq) {
  auto prep = prepare_do_query(m, dq);
  LiftedGraph lg(prep.model);
  auto choices = enumerate_parent_choices(prep.model, prep.target_nodes);
  auto gm = ground(prep.model);
  FamilyCache cache(gm);
  auto query = query_atoms(gm, dq);
  std::vector<InterventionTarget> targets;
  for (std::size_t i = 0; i < prep.targets.size(); ++i) targets.push_back({prep.targets[i], prep.target_values[i]});
  auto clamp = clamped_atoms(prep.model, gm, targets);

  std::vector<std::optional<Distribution>> out(choices.size());
  std::vector<std::exception_ptr> errors(choices.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next++) < choices.size();) {
      try {
        if (auto ext = orient_and_extend(prep.model, prep.target_nodes, choices[i])) {
          out[i] = post_intervention_distribution(ext->ground, clamp, query, &cache);
        }
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const auto workers = worker_count(choices.size());
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  DoAnswer answer;
  answer.choice_count = choices.size();
  for (std::size_t i = 0; i < choices.size(); ++i) {
    ChoiceLabel label;
    for (std::size_t t = 0; t < prep.target_nodes.size(); ++t) {
      std::vector<std::string> names;
      for (auto n : choices[i].parents[t]) names.push_back(lg.node_name(n));
      label.emplace_back(prep.target_names[t], std::move(names));
    }
    if (out[i]) {
      add_result(answer.results, std::move(*out[i]), std::move(label));
    } else {
      answer.inextensible.push_back(std::move(label));
    }
  }
  answer.unique = answer.results.size() == 1;
  return answer;
}

}  // namespace liftdo
