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

#include "liftdo/grounding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace liftdo {

std::optional<std::size_t> GroundModel::find(const GroundAtom& atom) const {
  auto it = index_.find(atom);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> GroundModel::find(const std::string& name) const {
  auto it = by_name_.find(name);
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

std::size_t GroundModel::index_of(const std::string& name) const {
  auto i = find(name);
  if (!i) throw LookupError("unknown ground atom '" + name + "'");
  return *i;
}

double GroundModel::factor_value(const GroundFactor& f, const Assignment& a) const {
  std::size_t idx = 0;
  for (auto atom : f.atoms) idx = idx * cardinality(atom) + a.values[atom];
  return (*f.table)[idx];
}

double GroundModel::unnormalized(const Assignment& a) const {
  double p = 1.0;
  for (const auto& f : factors) p *= factor_value(f, a);
  return p;
}

std::vector<std::size_t> GroundModel::parents(std::size_t atom) const {
  std::vector<std::size_t> out;
  for (const auto& f : factors) {
    if (!f.has_child() || f.child_atom() != atom) continue;
    for (auto a : f.atoms) {
      if (a != atom) out.push_back(a);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::vector<std::size_t>> GroundModel::successors() const {
  std::vector<std::vector<std::size_t>> out(size());
  for (const auto& f : factors) {
    if (!f.has_child()) continue;
    auto c = f.child_atom();
    for (auto a : f.atoms) {
      if (a != c) out[a].push_back(c);
    }
  }
  for (auto& s : out) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
  }
  return out;
}

bool GroundModel::acyclic() const {
  auto succ = successors();
  std::vector<std::size_t> indeg(size(), 0);
  for (const auto& s : succ) {
    for (auto b : s) ++indeg[b];
  }
  std::vector<std::size_t> stack;
  for (std::size_t i = 0; i < size(); ++i) {
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
  return seen == size();
}

namespace {

bool multi_atom(const GroundFactor& f) {
  for (auto a : f.atoms) {
    if (a != f.atoms.front()) return true;
  }
  return false;
}

}  // namespace

bool GroundModel::fully_directed() const { return ambiguous_factors().empty(); }

std::vector<std::size_t> GroundModel::ambiguous_factors() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (!factors[i].has_child() && multi_atom(factors[i])) out.push_back(i);
  }
  return out;
}

std::size_t GroundModel::state_space() const {
  std::size_t n = 1;
  for (std::size_t i = 0; i < size(); ++i) {
    auto c = cardinality(i);
    if (c != 0 && n > std::numeric_limits<std::size_t>::max() / c) return std::numeric_limits<std::size_t>::max();
    n *= c;
  }
  return n;
}

GroundModel ground(const Model& model) {
  GroundModel gm;
  for (std::size_t p = 0; p < model.prvs.size(); ++p) {
    for (auto& t : model.groundings(p)) {
      GroundAtom atom{p, t};
      auto idx = gm.atoms.size();
      gm.index_.emplace(atom, idx);
      gm.atom_names.push_back(model.atom_name(atom));
      gm.by_name_.emplace(gm.atom_names.back(), idx);
      gm.ranges.push_back(model.prvs[p].range);
      gm.atoms.push_back(std::move(atom));
    }
  }
  for (std::size_t s = 0; s < model.parfactors.size(); ++s) {
    const auto& g = model.parfactors[s];
    gm.factor_sources.push_back(g.name);
    auto table = std::make_shared<const std::vector<double>>(g.table);
    for (auto& binding : model.tuples(g.constraint)) {
      GroundFactor f;
      f.source = s;
      f.table = table;
      f.child_index = g.child();
      for (std::size_t pos = 0; pos < g.args.size(); ++pos) {
        GroundAtom atom{g.args[pos].prv, model.project(g, pos, binding)};
        auto it = gm.index_.find(atom);
        if (it == gm.index_.end()) throw LookupError("grounding outside PRV domain in " + g.name);
        f.atoms.push_back(it->second);
      }
      f.binding = std::move(binding);
      gm.factors.push_back(std::move(f));
    }
  }
  return gm;
}

TableFactor to_table_factor(const GroundModel& gm, const GroundFactor& f) {
  std::vector<std::size_t> vars = f.atoms;
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  std::vector<std::size_t> card;
  for (auto v : vars) card.push_back(gm.cardinality(v));
  std::size_t n = 1;
  for (auto c : card) n *= c;
  std::vector<std::size_t> where(f.atoms.size());
  for (std::size_t i = 0; i < f.atoms.size(); ++i) {
    where[i] = static_cast<std::size_t>(std::lower_bound(vars.begin(), vars.end(), f.atoms[i]) - vars.begin());
  }
  std::vector<double> values(n);
  std::vector<std::size_t> local(vars.size(), 0);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < f.atoms.size(); ++i) idx = idx * gm.cardinality(f.atoms[i]) + local[where[i]];
    values[k] = (*f.table)[idx];
    for (std::size_t d = vars.size(); d-- > 0;) {
      if (++local[d] < card[d]) break;
      local[d] = 0;
    }
  }
  return TableFactor(std::move(vars), std::move(card), std::move(values));
}

std::vector<TableFactor> table_factors(const GroundModel& gm) {
  std::vector<TableFactor> out;
  out.reserve(gm.factors.size());
  for (const auto& f : gm.factors) out.push_back(to_table_factor(gm, f));
  return out;
}

namespace {

// Upper and lower bounds on log Z from per-factor extremes.
bool plain_is_safe(const GroundModel& gm) {
  double hi = 0, lo = 0;
  for (std::size_t i = 0; i < gm.size(); ++i) hi += std::log(static_cast<double>(gm.cardinality(i)));
  lo = hi;
  for (const auto& f : gm.factors) {
    auto [mn, mx] = std::minmax_element(f.table->begin(), f.table->end());
    hi += std::log(*mx);
    lo += std::log(*mn);
  }
  return hi < 700 && lo > -700;
}

}  // namespace

double log_normalization(const GroundModel& gm) {
  auto r = eliminate(table_factors(gm), {}, {});
  double s = r.factor.values()[0];
  double lz = r.log_scale + std::log(s);
  if (!std::isfinite(lz)) throw std::overflow_error("normalisation constant is not finite");
  return lz;
}

double normalization(const GroundModel& gm) {
  double z;
  if (plain_is_safe(gm)) {
    EliminationOptions opt;
    opt.rescale = false;
    z = eliminate(table_factors(gm), {}, opt).factor.values()[0];
  } else {
    z = std::exp(log_normalization(gm));
  }
  if (!std::isfinite(z) || z <= 0) throw std::overflow_error("normalisation constant is not finite");
  return z;
}

JointDistribution::JointDistribution(const GroundModel& gm) : gm_(&gm), z_(0), log_z_(0), scaled_(!plain_is_safe(gm)) {
  if (scaled_) {
    log_z_ = log_normalization(gm);
    z_ = std::exp(log_z_);
  } else {
    z_ = normalization(gm);
    log_z_ = std::log(z_);
  }
}

double JointDistribution::probability(const Assignment& a) const {
  if (!scaled_) return gm_->unnormalized(a) / z_;
  double lp = -log_z_;
  for (const auto& f : gm_->factors) lp += std::log(gm_->factor_value(f, a));
  return std::exp(lp);
}

double joint_probability(const GroundModel& gm, const Assignment& a) {
  return JointDistribution(gm).probability(a);
}

bool next_assignment(const GroundModel& gm, Assignment& a) {
  for (std::size_t i = gm.size(); i-- > 0;) {
    if (++a.values[i] < gm.cardinality(i)) return true;
    a.values[i] = 0;
  }
  return false;
}

}  // namespace liftdo
