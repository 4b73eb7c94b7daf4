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

#include "liftdo/model.hpp"

#include <algorithm>

namespace liftdo {

std::optional<std::size_t> Parfactor::child() const {
  std::optional<std::size_t> found;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i].dir == EdgeDir::kChild) {
      if (found) return std::nullopt;
      found = i;
    }
  }
  return found;
}

std::size_t Parfactor::child_count() const {
  return static_cast<std::size_t>(std::count_if(
      args.begin(), args.end(), [](const Argument& a) { return a.dir == EdgeDir::kChild; }));
}

namespace {

template <typename T>
std::optional<std::size_t> find_by_name(const std::vector<T>& items, std::string_view name) {
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (items[i].name == name) return i;
  }
  return std::nullopt;
}

}  // namespace

std::optional<std::size_t> Model::find_logvar(std::string_view name) const {
  return find_by_name(logvars, name);
}

std::optional<std::size_t> Model::find_prv(std::string_view name) const {
  return find_by_name(prvs, name);
}

std::optional<std::size_t> Model::find_parfactor(std::string_view name) const {
  return find_by_name(parfactors, name);
}

std::size_t Model::logvar_index(std::string_view name) const {
  if (auto i = find_logvar(name)) return *i;
  throw LookupError("unknown logvar '" + std::string(name) + "'");
}

std::size_t Model::prv_index(std::string_view name) const {
  if (auto i = find_prv(name)) return *i;
  throw LookupError("unknown PRV '" + std::string(name) + "'");
}

std::vector<std::size_t> Model::parfactor_logvars(const Parfactor& g) const {
  std::vector<std::size_t> out;
  for (const auto& arg : g.args) {
    for (auto lv : arg.logvars) {
      if (std::find(out.begin(), out.end(), lv) == out.end()) out.push_back(lv);
    }
  }
  return out;
}

std::vector<Tuple> Model::tuples(const Constraint& c) const {
  if (c.tuples) return *c.tuples;
  std::vector<Tuple> out;
  std::vector<std::size_t> sizes;
  for (auto lv : c.logvars) {
    if (lv >= logvars.size() || logvars[lv].domain.empty()) return out;
    sizes.push_back(logvars[lv].domain.size());
  }
  if (sizes.empty()) {
    out.emplace_back();
    return out;
  }
  Tuple t(sizes.size(), 0);
  for (;;) {
    out.push_back(t);
    std::size_t k = sizes.size();
    while (k > 0 && ++t[k - 1] == sizes[k - 1]) {
      t[k - 1] = 0;
      --k;
    }
    if (k == 0) return out;
  }
}

std::size_t Model::tuple_count(const Constraint& c) const {
  if (c.tuples) return c.tuples->size();
  std::size_t n = 1;
  for (auto lv : c.logvars) n *= lv < logvars.size() ? logvars[lv].domain.size() : 0;
  return n;
}

std::vector<Tuple> Model::groundings(std::size_t prv) const {
  return tuples(Constraint{prvs.at(prv).params, std::nullopt});
}

Tuple Model::project(const Parfactor& g, std::size_t pos, const Tuple& binding) const {
  const auto& arg = g.args.at(pos);
  Tuple out;
  out.reserve(arg.logvars.size());
  for (auto lv : arg.logvars) {
    auto it = std::find(g.constraint.logvars.begin(), g.constraint.logvars.end(), lv);
    out.push_back(binding.at(static_cast<std::size_t>(it - g.constraint.logvars.begin())));
  }
  return out;
}

std::size_t Model::table_size(const Parfactor& g) const {
  std::size_t n = 1;
  for (const auto& arg : g.args) n *= prvs.at(arg.prv).range.size();
  return n;
}

std::string Model::atom_name(const GroundAtom& atom) const {
  const auto& p = prvs.at(atom.prv);
  std::string s = p.name;
  if (p.params.empty()) return s;
  s += '(';
  for (std::size_t i = 0; i < atom.args.size(); ++i) {
    if (i) s += ',';
    s += logvars.at(p.params.at(i)).domain.at(atom.args[i]);
  }
  s += ')';
  return s;
}

std::string Model::prv_signature(std::size_t prv) const {
  const auto& p = prvs.at(prv);
  std::string s = p.name;
  if (p.params.empty()) return s;
  s += '(';
  for (std::size_t i = 0; i < p.params.size(); ++i) {
    if (i) s += ',';
    s += logvars.at(p.params[i]).name;
  }
  s += ')';
  return s;
}

std::size_t table_index(const Model& m, const Parfactor& g,
                        const std::vector<std::size_t>& values) {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < g.args.size(); ++i) {
    idx = idx * m.prvs[g.args[i].prv].range.size() + values[i];
  }
  return idx;
}

}  // namespace liftdo
