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


#include <algorithm>
#include <tuple>

#include "doctest.h"
#include "liftdo/grounding.hpp"
#include "liftdo/shattering.hpp"
#include "support.hpp"

using namespace liftdo;
using liftdo::testing::employees;
using liftdo::testing::seeded_employees;

namespace {

std::vector<std::string> parfactor_names(const Model& m) {
  std::vector<std::string> out;
  for (const auto& g : m.parfactors) out.push_back(g.name);
  return out;
}

/// Ground factors as (table, child, atom names), sorted.
std::vector<std::tuple<std::vector<double>, std::optional<std::size_t>, std::vector<std::string>>> factor_multiset(
    const Model& m) {
  auto gm = ground(m);
  std::vector<std::tuple<std::vector<double>, std::optional<std::size_t>, std::vector<std::string>>> out;
  for (const auto& f : gm.factors) {
    std::vector<std::string> names;
    for (auto a : f.atoms) names.push_back(gm.atom_names[a]);
    out.emplace_back(*f.table, f.child_index, names);
  }
  std::sort(out.begin(), out.end());
  return out;
}

TargetSpec atom(std::size_t prv, std::vector<Tuple> tuples) { return TargetSpec{prv, std::move(tuples)}; }

}  // namespace

TEST_CASE("splitting on Comp(alice)") {
  auto m = employees();
  auto split = split_on_atoms(m, {atom(0, {{0}})});
  CHECK(parfactor_names(split) == std::vector<std::string>{"g1", "g1'", "g2", "g3", "g3'"});
  const auto& g1 = split.parfactors[0];
  const auto& g1p = split.parfactors[1];
  CHECK(g1.constraint.tuples == std::vector<Tuple>{{1}, {2}});
  CHECK(g1p.constraint.tuples == std::vector<Tuple>{{0}});
  CHECK(g1.table == m.parfactors[0].table);
  CHECK(split.parfactors[2] == m.parfactors[1]);
  CHECK(split.parfactors[4].constraint.tuples == std::vector<Tuple>{{0}});
  CHECK(split.parfactors[4].args == m.parfactors[2].args);
}

TEST_CASE("splitting on Rev changes nothing") {
  auto m = seeded_employees();
  CHECK(split_on_atoms(m, {TargetSpec{2, std::nullopt}}) == m);
  CHECK(split_on_atoms(m, {atom(2, {{}})}) == m);
  CHECK(split_on_atoms(m, {TargetSpec{0, std::nullopt}}) == m);
}

TEST_CASE("splitting on a constrained PRV") {
  auto m = employees();
  auto split = split_on_atoms(m, {atom(0, {{0}, {1}})});
  CHECK(split.parfactors.size() == 5);
  CHECK(split.parfactors[0].constraint.tuples == std::vector<Tuple>{{2}});
  CHECK(split.parfactors[1].constraint.tuples == std::vector<Tuple>{{0}, {1}});
  CHECK(factor_multiset(split) == factor_multiset(m));
}

TEST_CASE("several targets") {
  auto m = employees();
  auto split = split_on_atoms(m, {atom(0, {{0}}), atom(1, {{2}})});
  CHECK(factor_multiset(split) == factor_multiset(m));
  CHECK(parfactor_names(split) == std::vector<std::string>{"g1", "g1'", "g2", "g2'", "g3", "g3'", "g3''"});
  CHECK(split.parfactors[4].constraint.tuples == std::vector<Tuple>{{1}});
  CHECK(split.parfactors[5].constraint.tuples == std::vector<Tuple>{{0}});
  CHECK(split.parfactors[6].constraint.tuples == std::vector<Tuple>{{2}});
}

TEST_CASE("targets are validated") {
  auto m = employees();
  CHECK_THROWS_AS(target_groundings(m, TargetSpec{7, std::nullopt}), LookupError);
  CHECK_THROWS_AS(target_groundings(m, atom(0, {{5}})), LookupError);
  CHECK(target_groundings(m, atom(0, {{2}, {0}, {2}})) == std::vector<Tuple>{{0}, {2}});
  CHECK(target_groundings(m, TargetSpec{1, std::nullopt}) == std::vector<Tuple>{{0}, {1}, {2}});
}

TEST_CASE("splitting preserves the ground factors and is idempotent") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    auto fx = liftdo::testing::random_fixture(seed, 6, 2);
    std::vector<TargetSpec> targets;
    for (const auto& t : fx.query.targets) targets.push_back(t.target);
    auto once = split_on_atoms(fx.model, targets);
    CHECK(factor_multiset(once) == factor_multiset(fx.model));
    CHECK(split_on_atoms(once, targets) == once);
  }
  auto m = employees(5);
  for (const auto& targets : std::vector<std::vector<TargetSpec>>{
           {atom(0, {{3}})}, {atom(1, {{0}, {4}})}, {atom(0, {{1}}), atom(0, {{2}})}}) {
    auto once = split_on_atoms(m, targets);
    CHECK(factor_multiset(once) == factor_multiset(m));
    CHECK(split_on_atoms(once, targets) == once);
  }
}

TEST_CASE("split to single groundings") {
  auto m = employees();
  auto split = split_to_ground(m, {0});
  CHECK(parfactor_names(split) == std::vector<std::string>{"g1_alice", "g1_bob", "g1_charlie", "g2", "g3"});
  CHECK(factor_multiset(split) == factor_multiset(m));
  auto all = ground_as_model(m);
  CHECK(all.parfactors.size() == 9);
  CHECK(factor_multiset(all) == factor_multiset(m));
}
