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

#include "liftdo/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <random>
#include <set>
#include <stdexcept>

#include "liftdo/causal.hpp"
#include "liftdo/grounding.hpp"

namespace liftdo {

void fill_uniform_potentials(Model& m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (auto& g : m.parfactors) {
    if (!std::all_of(g.table.begin(), g.table.end(), [](double v) { return v == 1.0; })) continue;
    for (auto& v : g.table) v = 0.1 + 0.9 * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
  }
}

Model resize_domains(const Model& m, std::size_t prv, std::size_t size) {
  if (prv >= m.prvs.size()) throw LookupError("unknown PRV index");
  Model out = m;
  std::set<std::size_t> resized;
  for (auto lv : m.prvs[prv].params) {
    for (std::size_t i = 0; i < m.logvars.size(); ++i) {
      if (m.logvars[i].domain == m.logvars[lv].domain) resized.insert(i);
    }
  }
  for (auto lv : resized) {
    auto& dom = out.logvars[lv].domain;
    if (dom.size() > size) dom.resize(size);
    std::string stem = out.logvars[lv].name;
    std::transform(stem.begin(), stem.end(), stem.begin(), [](unsigned char c) { return std::tolower(c); });
    for (std::size_t k = dom.size() + 1; dom.size() < size; ++k) {
      auto name = stem + std::to_string(k);
      if (std::find(dom.begin(), dom.end(), name) == dom.end()) dom.push_back(name);
    }
  }
  for (auto& g : out.parfactors) {
    if (!g.constraint.tuples) continue;
    auto& ts = *g.constraint.tuples;
    ts.erase(std::remove_if(ts.begin(), ts.end(),
                            [&](const Tuple& t) {
                              for (std::size_t j = 0; j < t.size(); ++j) {
                                if (t[j] >= out.logvars[g.constraint.logvars[j]].domain.size()) return true;
                              }
                              return false;
                            }),
             ts.end());
  }
  return out;
}

std::vector<BenchRow> run_bench(const Model& m, std::size_t prv, const std::vector<std::size_t>& sizes) {
  if (prv >= m.prvs.size()) throw LookupError("unknown PRV index");
  std::optional<std::size_t> query_prv;
  for (std::size_t p = 0; p < m.prvs.size() && !query_prv; ++p) {
    if (p != prv) query_prv = p;
  }
  if (!query_prv) throw std::invalid_argument("bench needs a PRV other than the target");
  std::vector<BenchRow> rows;
  for (auto size : sizes) {
    if (size == 0) throw std::invalid_argument("domain sizes must be positive");
    auto sized = resize_domains(m, prv, size);
    auto gm = ground(sized);
    BenchRow row;
    row.domain_size = size;
    for (const auto& g : sized.groundings(prv)) {
      auto atom = *gm.find(GroundAtom{prv, g});
      std::set<std::size_t> ne;
      for (const auto& f : gm.factors) {
        if (f.has_child() || std::find(f.atoms.begin(), f.atoms.end(), atom) == f.atoms.end()) continue;
        for (auto a : f.atoms) {
          if (a != atom) ne.insert(a);
        }
      }
      row.ground_bound_exponent += ne.size();
    }
    DoQuery dq;
    dq.query.push_back({*query_prv, sized.groundings(*query_prv).front()});
    dq.targets.push_back({TargetSpec{prv, std::nullopt}, 0});
    auto start = std::chrono::steady_clock::now();
    auto answer = lifted_do_query(sized, dq);
    auto stop = std::chrono::steady_clock::now();
    row.lifted_choice_count = answer.choice_count;
    row.wall_time_ms = std::chrono::duration<double, std::milli>(stop - start).count();
    rows.push_back(row);
  }
  return rows;
}

std::string bench_csv(const std::vector<BenchRow>& rows) {
  std::string out = "domain_size,lifted_choice_count,ground_neighbor_subset_bound,wall_time_ms\n";
  char buf[64];
  for (const auto& r : rows) {
    out += std::to_string(r.domain_size) + "," + std::to_string(r.lifted_choice_count) + ",";
    if (r.ground_bound_exponent < 64) {
      out += std::to_string(std::uint64_t{1} << r.ground_bound_exponent);
    } else {
      out += "2^" + std::to_string(r.ground_bound_exponent);
    }
    std::snprintf(buf, sizeof buf, ",%.3f\n", r.wall_time_ms);
    out += buf;
  }
  return out;
}

}  // namespace liftdo
