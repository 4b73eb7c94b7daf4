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

#include "support.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include "liftdo/bench.hpp"
#include "liftdo/model_io.hpp"

#ifndef LIFTDO_FIXTURE_DIR
#define LIFTDO_FIXTURE_DIR "tests/fixtures"
#endif

namespace liftdo::testing {

std::string fixture_path(const std::string& name) { return std::string(LIFTDO_FIXTURE_DIR) + "/" + name; }

Model parse(const std::string& text) { return parse_model({text, "<test>"}); }

Model employees(std::size_t n) {
  std::vector<std::string> names{"alice", "bob", "charlie"};
  for (std::size_t k = 4; names.size() < n; ++k) names.push_back("e" + std::to_string(k));
  names.resize(n);
  std::string dom;
  for (std::size_t i = 0; i < n; ++i) dom += (i ? ", " : "") + names[i];
  return parse("logvar E {" + dom + "}\n"
               "prv Comp(E) range {low, medium, high}\n"
               "prv Sal(E) range {low, medium, high}\n"
               "prv Rev range {low, medium, high}\n"
               "parfactor g1(Comp(E), Rev) uniform\n"
               "parfactor g2(Rev, ->Sal(E)) uniform\n"
               "parfactor g3(Comp(E), ->Sal(E)) uniform\n");
}

Model seeded_employees(std::uint64_t seed, std::size_t n) {
  auto m = employees(n);
  fill_uniform_potentials(m, seed);
  return m;
}

namespace {

std::vector<std::size_t> strides(const GroundModel& gm) {
  std::vector<std::size_t> s(gm.size(), 1);
  for (std::size_t i = gm.size(); i-- > 1;) s[i - 1] = s[i] * gm.cardinality(i);
  return s;
}

std::size_t value_at(const GroundModel& gm, const std::vector<std::size_t>& s, std::size_t state, std::size_t atom) {
  return (state / s[atom]) % gm.cardinality(atom);
}

// Unnormalised product of all factors for joint state `state`.
double product_at(const GroundModel& gm, const std::vector<std::size_t>& s, std::size_t state) {
  double p = 1.0;
  for (const auto& f : gm.factors) {
    std::size_t idx = 0;
    for (auto a : f.atoms) idx = idx * gm.cardinality(a) + value_at(gm, s, state, a);
    p *= (*f.table)[idx];
  }
  return p;
}

std::size_t states(const GroundModel& gm) {
  std::size_t n = 1;
  for (std::size_t i = 0; i < gm.size(); ++i) n *= gm.cardinality(i);
  return n;
}

}  // namespace

double brute_z(const GroundModel& gm) {
  auto s = strides(gm);
  double z = 0;
  for (std::size_t k = 0; k < states(gm); ++k) z += product_at(gm, s, k);
  return z;
}

std::vector<double> brute_joint(const GroundModel& gm) {
  auto s = strides(gm);
  std::vector<double> out(states(gm));
  double z = 0;
  for (std::size_t k = 0; k < out.size(); ++k) z += out[k] = product_at(gm, s, k);
  for (auto& p : out) p /= z;
  return out;
}

std::vector<double> brute_marginal(const GroundModel& gm, const std::vector<std::size_t>& qs,
                                   const std::vector<std::pair<std::size_t, std::size_t>>& ev) {
  auto s = strides(gm);
  std::size_t n = 1;
  for (auto q : qs) n *= gm.cardinality(q);
  std::vector<double> out(n, 0.0);
  for (std::size_t k = 0; k < states(gm); ++k) {
    bool ok = true;
    for (const auto& [a, v] : ev) ok = ok && value_at(gm, s, k, a) == v;
    if (!ok) continue;
    std::size_t row = 0;
    for (auto q : qs) row = row * gm.cardinality(q) + value_at(gm, s, k, q);
    out[row] += product_at(gm, s, k);
  }
  double total = std::accumulate(out.begin(), out.end(), 0.0);
  for (auto& p : out) p /= total;
  return out;
}

std::vector<double> literal_truncated_sum(const GroundModel& full,
                                          const std::vector<std::pair<std::size_t, std::size_t>>& clamp,
                                          const std::vector<std::size_t>& query) {
  auto s = strides(full);
  auto joint = brute_joint(full);
  std::map<std::size_t, std::size_t> clamped(clamp.begin(), clamp.end());
  // P(r | pa) for each non-target atom, keyed by (parent values..., r).
  std::vector<std::map<std::vector<std::size_t>, double>> cond(full.size());
  for (std::size_t v = 0; v < full.size(); ++v) {
    if (clamped.count(v)) continue;
    auto pa = full.parents(v);
    std::map<std::vector<std::size_t>, double> fam, par;
    for (std::size_t k = 0; k < joint.size(); ++k) {
      std::vector<std::size_t> key;
      for (auto p : pa) key.push_back(value_at(full, s, k, p));
      par[key] += joint[k];
      key.push_back(value_at(full, s, k, v));
      fam[key] += joint[k];
    }
    for (auto& [key, p] : fam) {
      std::vector<std::size_t> pkey(key.begin(), key.end() - 1);
      cond[v][key] = p / par[pkey];
    }
  }
  std::size_t n = 1;
  for (auto q : query) n *= full.cardinality(q);
  std::vector<double> out(n, 0.0);
  for (std::size_t k = 0; k < joint.size(); ++k) {
    bool ok = true;
    for (const auto& [a, v] : clamped) ok = ok && value_at(full, s, k, a) == v;
    if (!ok) continue;
    double p = 1.0;
    for (std::size_t v = 0; v < full.size(); ++v) {
      if (clamped.count(v)) continue;
      std::vector<std::size_t> key;
      for (auto pa : full.parents(v)) key.push_back(value_at(full, s, k, pa));
      key.push_back(value_at(full, s, k, v));
      p *= cond[v][key];
    }
    std::size_t row = 0;
    for (auto q : query) row = row * full.cardinality(q) + value_at(full, s, k, q);
    out[row] += p;
  }
  return out;
}

bool path_d_separated(const GroundModel& gm, const std::vector<std::size_t>& x, const std::vector<std::size_t>& y,
                      const std::vector<std::size_t>& z) {
  const auto n = gm.size();
  std::vector<char> in_z(n, 0), in_y(n, 0);
  for (auto v : z) in_z[v] = 1;
  for (auto v : y) in_y[v] = 1;
  // A node is active if it or one of its directed descendants is in Z.
  auto succ = gm.successors();
  std::vector<char> active(n, 0);
  for (std::size_t v = 0; v < n; ++v) {
    std::vector<std::size_t> stack{v};
    std::vector<char> seen(n, 0);
    while (!stack.empty()) {
      auto u = stack.back();
      stack.pop_back();
      if (seen[u]) continue;
      seen[u] = 1;
      if (in_z[u]) active[v] = 1;
      for (auto w : succ[u]) stack.push_back(w);
    }
  }
  auto child_of = [&](std::size_t f) -> long {
    return gm.factors[f].child_index ? static_cast<long>(gm.factors[f].child_atom()) : -1;
  };
  std::vector<char> used_var(n, 0), used_factor(gm.factors.size(), 0);
  std::function<bool(std::size_t, long)> open_from = [&](std::size_t v, long arrived) -> bool {
    for (std::size_t f = 0; f < gm.factors.size(); ++f) {
      const auto& atoms = gm.factors[f].atoms;
      if (used_factor[f] || std::find(atoms.begin(), atoms.end(), v) == atoms.end()) continue;
      if (arrived >= 0) {
        bool collider = child_of(static_cast<std::size_t>(arrived)) == static_cast<long>(v) &&
                        child_of(f) == static_cast<long>(v);
        if (collider ? !active[v] : in_z[v] != 0) continue;
      }
      used_factor[f] = 1;
      for (auto w : atoms) {
        if (w == v || used_var[w]) continue;
        long c = child_of(f);
        if (c >= 0 && c != static_cast<long>(v) && c != static_cast<long>(w) && !active[static_cast<std::size_t>(c)]) {
          continue;
        }
        if (in_y[w]) {
          used_factor[f] = 0;
          return true;
        }
        used_var[w] = 1;
        bool hit = open_from(w, static_cast<long>(f));
        used_var[w] = 0;
        if (hit) {
          used_factor[f] = 0;
          return true;
        }
      }
      used_factor[f] = 0;
    }
    return false;
  };
  for (auto v : x) {
    used_var[v] = 1;
    bool hit = open_from(v, -1);
    used_var[v] = 0;
    if (hit) return false;
  }
  return true;
}

std::vector<std::tuple<std::size_t, std::size_t, std::vector<std::size_t>>> small_sep_queries(std::size_t atoms,
                                                                                                std::size_t max_z) {
  std::vector<std::tuple<std::size_t, std::size_t, std::vector<std::size_t>>> out;
  for (std::size_t a = 0; a < atoms; ++a) {
    for (std::size_t b = a + 1; b < atoms; ++b) {
      std::vector<std::size_t> rest;
      for (std::size_t c = 0; c < atoms; ++c) {
        if (c != a && c != b) rest.push_back(c);
      }
      out.emplace_back(a, b, std::vector<std::size_t>{});
      if (max_z >= 1) {
        for (std::size_t i = 0; i < rest.size(); ++i) out.emplace_back(a, b, std::vector<std::size_t>{rest[i]});
      }
      if (max_z >= 2) {
        for (std::size_t i = 0; i < rest.size(); ++i) {
          for (std::size_t j = i + 1; j < rest.size(); ++j) out.emplace_back(a, b, std::vector<std::size_t>{rest[i], rest[j]});
        }
      }
    }
  }
  return out;
}

namespace {

// Partially directed graph over ground atoms with Meek's rules.
struct Pdag {
  std::size_t n;
  std::vector<char> dir;  // dir[a*n+b]: a -> b
  std::vector<char> und;  // symmetric

  explicit Pdag(std::size_t size) : n(size), dir(size * size, 0), und(size * size, 0) {}
  bool d(std::size_t a, std::size_t b) const { return dir[a * n + b]; }
  bool u(std::size_t a, std::size_t b) const { return und[a * n + b]; }
  bool adj(std::size_t a, std::size_t b) const { return d(a, b) || d(b, a) || u(a, b); }
  void orient(std::size_t a, std::size_t b) {
    und[a * n + b] = und[b * n + a] = 0;
    dir[a * n + b] = 1;
  }

  void close() {
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
          if (!u(a, b)) continue;
          bool go = false;
          for (std::size_t c = 0; c < n && !go; ++c) {
            if (c == a || c == b) continue;
            // R1: c -> a - b, c and b non-adjacent.
            if (d(c, a) && !adj(c, b)) go = true;
            // R2: a -> c -> b.
            if (d(a, c) && d(c, b)) go = true;
            for (std::size_t e = c + 1; e < n && !go; ++e) {
              if (e == a || e == b) continue;
              // R3: a - c -> b, a - e -> b, c and e non-adjacent.
              if (u(a, c) && u(a, e) && d(c, b) && d(e, b) && !adj(c, e)) go = true;
            }
            for (std::size_t e = 0; e < n && !go; ++e) {
              if (e == a || e == b || e == c) continue;
              // R4: a - e -> c -> b, e and b non-adjacent, a and c adjacent.
              if (u(a, e) && d(e, c) && d(c, b) && !adj(e, b) && adj(a, c)) go = true;
            }
          }
          if (go) {
            orient(a, b);
            changed = true;
          }
        }
      }
    }
  }
};

std::string values_clause(std::size_t k) {
  std::string s = "{";
  for (std::size_t i = 0; i < k; ++i) s += (i ? ", v" : "v") + std::to_string(i);
  return s + "}";
}

}  // namespace

RandomFixture random_fixture(std::uint64_t seed, std::size_t max_ambiguous, std::size_t targets) {
  std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ULL + 12345);
  auto uniform = [&](std::size_t k) { return static_cast<std::size_t>(rng() % k); };
  auto real = [&] { return 0.05 + 0.95 * (static_cast<double>(rng() >> 11) * 0x1.0p-53); };
  const char* constants[] = {"a", "b", "c"};

  for (;;) {
    const std::size_t d = 1 + uniform(3);
    const std::size_t np = 1 + uniform(3);
    const std::size_t ne = 1 + uniform(3);
    if (np + ne * d > 10 || np + ne * d < 3) continue;

    struct Spec {
      std::string name;
      bool param;
      std::size_t range;
    };
    std::vector<Spec> prvs;
    for (std::size_t i = 0; i < np; ++i) prvs.push_back({"P" + std::to_string(i), false, 2 + uniform(2)});
    for (std::size_t i = 0; i < ne; ++i) prvs.push_back({"Q" + std::to_string(i), true, 2 + uniform(2)});
    std::vector<std::size_t> order(prvs.size());
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<std::vector<std::size_t>> parents(prvs.size());
    for (std::size_t j = 0; j < order.size(); ++j) {
      for (std::size_t i = 0; i < j; ++i) {
        const auto a = order[i], b = order[j];
        if (prvs[a].param && !prvs[b].param) continue;
        if (parents[b].size() < 2 && uniform(100) < 45) parents[b].push_back(a);
      }
    }

    std::ostringstream src;
    src << "logvar X {";
    for (std::size_t i = 0; i < d; ++i) src << (i ? ", " : "") << constants[i];
    src << "}\n";
    auto sig = [&](std::size_t p) { return prvs[p].name + (prvs[p].param ? "(X)" : ""); };
    for (std::size_t p = 0; p < prvs.size(); ++p) src << "prv " << sig(p) << " range " << values_clause(prvs[p].range) << "\n";
    for (std::size_t p = 0; p < prvs.size(); ++p) {
      std::size_t rows = 1;
      for (auto q : parents[p]) rows *= prvs[q].range;
      if (parents[p].empty()) {
        src << "parfactor prior_" << prvs[p].name << "(" << sig(p) << ") table {\n";
      } else {
        src << "parfactor cpt_" << prvs[p].name << "(";
        for (auto q : parents[p]) src << sig(q) << ", ";
        src << "->" << sig(p) << ") table {\n";
      }
      for (std::size_t r = 0; r < rows; ++r) {
        std::vector<double> row(prvs[p].range);
        for (auto& v : row) v = real();
        double total = std::accumulate(row.begin(), row.end(), 0.0);
        std::string head;
        for (std::size_t k = parents[p].size(), rest = r; k-- > 0;) {
          head = "v" + std::to_string(rest % prvs[parents[p][k]].range) + ", " + head;
          rest /= prvs[parents[p][k]].range;
        }
        for (std::size_t k = 0; k < row.size(); ++k) {
          src << "  (" << head << "v" << k << ") = " << format_potential(row[k] / total) << "\n";
        }
      }
      src << "}\n";
    }
    Model m = parse(src.str());
    GroundModel gm = ground(m);
    if (gm.size() > 10) continue;

    // Equivalence class of the ground DAG: v-structures, random background
    // knowledge, Meek closure, and whole parfactors oriented together.
    Pdag g(gm.size());
    for (const auto& f : gm.factors) {
      if (!f.has_child()) continue;
      for (auto a : f.atoms) {
        if (a != f.child_atom()) g.und[a * g.n + f.child_atom()] = g.und[f.child_atom() * g.n + a] = 1;
      }
    }
    for (std::size_t c = 0; c < gm.size(); ++c) {
      auto pa = gm.parents(c);
      for (std::size_t i = 0; i < pa.size(); ++i) {
        for (std::size_t j = i + 1; j < pa.size(); ++j) {
          if (!g.adj(pa[i], pa[j])) {
            g.orient(pa[i], c);
            g.orient(pa[j], c);
          }
        }
      }
    }
    for (std::size_t c = 0; c < gm.size(); ++c) {
      for (auto a : gm.parents(c)) {
        if (g.u(a, c) && uniform(100) < 15) g.orient(a, c);
      }
    }
    g.close();
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t p = 0; p < m.parfactors.size(); ++p) {
        const auto& pf = m.parfactors[p];
        if (!pf.child()) continue;
        bool any_dir = false, any_und = false;
        for (const auto& f : gm.factors) {
          if (f.source != p) continue;
          for (auto a : f.atoms) {
            if (a == f.child_atom()) continue;
            (g.u(a, f.child_atom()) ? any_und : any_dir) = true;
          }
        }
        if (any_und && (any_dir || pf.args.size() > 2)) {
          for (const auto& f : gm.factors) {
            if (f.source != p) continue;
            for (auto a : f.atoms) {
              if (a != f.child_atom()) g.orient(a, f.child_atom());
            }
          }
          changed = true;
        }
      }
      if (changed) g.close();
    }
    std::size_t ambiguous = 0;
    for (std::size_t p = 0; p < m.parfactors.size(); ++p) {
      auto& pf = m.parfactors[p];
      if (!pf.child() || pf.args.size() != 2) continue;
      bool all_und = true;
      std::size_t count = 0;
      for (const auto& f : gm.factors) {
        if (f.source != p) continue;
        ++count;
        all_und = all_und && g.u(f.atoms[0], f.atoms[1]);
      }
      if (all_und) {
        pf.args[*pf.child()].dir = EdgeDir::kUndirected;
        ambiguous += count;
      }
    }
    if (ambiguous > max_ambiguous || (ambiguous == 0 && uniform(4) != 0)) continue;

    RandomFixture out;
    out.ambiguous = ambiguous;
    std::vector<std::size_t> atoms(gm.size());
    std::iota(atoms.begin(), atoms.end(), 0);
    std::shuffle(atoms.begin(), atoms.end(), rng);
    out.query.query.push_back(gm.atoms[atoms[0]]);
    for (std::size_t t = 1; t <= targets && t < atoms.size(); ++t) {
      const auto a = atoms[t];
      out.query.targets.push_back({TargetSpec{gm.atoms[a].prv, std::vector<Tuple>{gm.atoms[a].args}},
                                   uniform(gm.cardinality(a))});
    }
    out.model = std::move(m);
    return out;
  }
}

double matched_distance(const std::vector<Distribution>& a, const std::vector<Distribution>& b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  std::vector<std::size_t> perm(b.size());
  std::iota(perm.begin(), perm.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  do {
    double worst = 0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, linf_distance(a[i], b[perm[i]]));
    best = std::min(best, worst);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

std::vector<Distribution> distributions(const DoAnswer& answer) {
  std::vector<Distribution> out;
  for (const auto& r : answer.results) out.push_back(r.distribution);
  return out;
}

}  // namespace liftdo::testing
