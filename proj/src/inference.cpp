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

#include "liftdo/inference.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace liftdo {

double Distribution::sum() const {
  double s = 0;
  for (double p : probs) s += p;
  return s;
}

std::string distribution_label(const GroundModel& gm, const std::vector<std::size_t>& atoms,
                               std::size_t row) {
  std::vector<std::string> parts(atoms.size());
  for (std::size_t i = atoms.size(); i-- > 0;) {
    auto c = gm.cardinality(atoms[i]);
    parts[i] = gm.ranges[atoms[i]][row % c];
    row /= c;
  }
  std::string s;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) s += ',';
    s += parts[i];
  }
  return s;
}

TableFactor joint_table(const std::vector<TableFactor>& factors, std::vector<std::size_t> vars,
                        const std::vector<std::size_t>& cards) {
  std::sort(vars.begin(), vars.end());
  std::vector<TableFactor> work = factors;
  std::set<std::size_t> present;
  for (const auto& f : work) present.insert(f.vars().begin(), f.vars().end());
  for (auto v : vars) {
    if (!present.count(v)) work.emplace_back(std::vector<std::size_t>{v}, std::vector<std::size_t>{cards.at(v)},
                                             std::vector<double>(cards.at(v), 1.0));
  }
  auto r = eliminate(std::move(work), vars);
  auto f = std::move(r.factor);
  if (!(f.sum() > 0) || !std::isfinite(f.sum())) throw ZeroEvidenceProbability("evidence has probability zero");
  f.normalize();
  return f;
}

TableFactor joint_table(const GroundModel& gm, std::vector<std::size_t> vars, const Evidence& ev) {
  std::vector<std::size_t> cards(gm.size());
  for (std::size_t i = 0; i < gm.size(); ++i) cards[i] = gm.cardinality(i);
  auto factors = table_factors(gm);
  for (const auto& [atom, value] : ev) {
    if (atom >= gm.size() || value >= gm.cardinality(atom)) throw std::out_of_range("evidence outside model");
    for (auto& f : factors) f = f.reduce(atom, value);
  }
  for (auto v : vars) {
    if (ev.count(v)) throw std::invalid_argument("query atom is also evidence");
    if (v >= gm.size()) throw std::out_of_range("query atom outside model");
  }
  return joint_table(factors, std::move(vars), cards);
}

Distribution to_distribution(const GroundModel& gm, const TableFactor& table, const std::vector<std::size_t>& qs) {
  Distribution d;
  d.atoms = qs;
  std::size_t n = 1;
  for (auto q : qs) n *= gm.cardinality(q);
  d.probs.resize(n);
  d.labels.resize(n);
  std::vector<std::size_t> pos(qs.size());
  for (std::size_t i = 0; i < qs.size(); ++i) {
    auto it = std::lower_bound(table.vars().begin(), table.vars().end(), qs[i]);
    if (it == table.vars().end() || *it != qs[i]) throw std::invalid_argument("table does not cover the query");
    pos[i] = static_cast<std::size_t>(it - table.vars().begin());
  }
  if (table.vars().size() != qs.size()) throw std::invalid_argument("table has extra variables");
  std::vector<std::size_t> local(qs.size()), sorted(qs.size());
  for (std::size_t row = 0; row < n; ++row) {
    std::size_t r = row;
    for (std::size_t i = qs.size(); i-- > 0;) {
      local[i] = r % gm.cardinality(qs[i]);
      r /= gm.cardinality(qs[i]);
    }
    for (std::size_t i = 0; i < qs.size(); ++i) sorted[pos[i]] = local[i];
    d.probs[row] = table.at(sorted);
    d.labels[row] = distribution_label(gm, qs, row);
  }
  return d;
}

Distribution joint_marginal(const GroundModel& gm, const std::vector<std::size_t>& qs, const Evidence& ev) {
  std::set<std::size_t> distinct(qs.begin(), qs.end());
  if (qs.empty() || distinct.size() != qs.size()) throw std::invalid_argument("query atoms must be distinct");
  return to_distribution(gm, joint_table(gm, qs, ev), qs);
}

Distribution marginal(const GroundModel& gm, std::size_t q, const Evidence& ev) {
  return joint_marginal(gm, {q}, ev);
}

TableFactor conditional_table(const TableFactor& family_joint, std::size_t child) {
  const auto& vars = family_joint.vars();
  auto it = std::lower_bound(vars.begin(), vars.end(), child);
  if (it == vars.end() || *it != child) throw std::invalid_argument("child not in family table");
  auto parents = family_joint.sum_out(child);
  const auto cpos = static_cast<std::size_t>(it - vars.begin());
  std::size_t inner = 1;
  for (std::size_t i = cpos + 1; i < vars.size(); ++i) inner *= family_joint.card()[i];
  const std::size_t k = family_joint.card()[cpos];
  TableFactor out = family_joint;
  auto& v = out.values();
  for (std::size_t idx = 0; idx < v.size(); ++idx) {
    const std::size_t outer = idx / (inner * k);
    const std::size_t in = idx % inner;
    double m = parents.values()[outer * inner + in];
    if (!(m > 0)) throw ZeroEvidenceProbability("parent configuration has probability zero");
    v[idx] /= m;
  }
  return out;
}

Distribution conditional_given_parents(const GroundModel& gm, std::size_t r,
                                       const std::vector<std::size_t>& parent_values) {
  if (!gm.fully_directed()) throw std::invalid_argument("conditional_given_parents needs a fully directed model");
  auto pa = gm.parents(r);
  if (pa.size() != parent_values.size()) throw std::invalid_argument("parent assignment is incomplete");
  Evidence ev;
  for (std::size_t i = 0; i < pa.size(); ++i) ev[pa[i]] = parent_values[i];
  return marginal(gm, r, ev);
}

}  // namespace liftdo
