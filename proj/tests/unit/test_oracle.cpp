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
#include <cmath>

#include "doctest.h"
#include "liftdo/causal.hpp"
#include "liftdo/dsep.hpp"
#include "liftdo/oracle.hpp"
#include "support.hpp"

using namespace liftdo;
using liftdo::testing::distributions;
using liftdo::testing::employees;
using liftdo::testing::matched_distance;
using liftdo::testing::parse;
using liftdo::testing::seeded_employees;

namespace {

std::vector<std::vector<std::size_t>> all_parents(const GroundModel& gm) {
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t a = 0; a < gm.size(); ++a) out.push_back(gm.parents(a));
  return out;
}

std::string chain_of_undirected(std::size_t n) {
  std::string text;
  for (std::size_t i = 0; i < n; ++i) text += "prv A" + std::to_string(i) + " range {t, f}\n";
  for (std::size_t i = 0; i + 1 < n; ++i) {
    text += "parfactor f" + std::to_string(i) + "(A" + std::to_string(i) + ", A" + std::to_string(i + 1) + ") uniform\n";
  }
  return text;
}

}  // namespace

TEST_CASE("fully directed input has one extension") {
  auto gm = ground(parse(
      "prv A range {t, f}\nprv B range {t, f}\nprv C range {t, f}\n"
      "parfactor f(A, ->B) uniform\nparfactor g(C, ->B) uniform\n"));
  auto ext = enumerate_extensions(gm);
  REQUIRE(ext.size() == 1);
  CHECK(all_parents(ext[0]) == all_parents(gm));
}

TEST_CASE("single undirected factor has two extensions") {
  auto gm = ground(parse("prv A range {t, f}\nprv B range {t, f}\nparfactor f(A, B) uniform\n"));
  auto ext = enumerate_extensions(gm);
  REQUIRE(ext.size() == 2);
  CHECK(ext[0].parents(0) == std::vector<std::size_t>{1});
  CHECK(ext[0].parents(1) == std::vector<std::size_t>{});
  CHECK(ext[1].parents(1) == std::vector<std::size_t>{0});
}

TEST_CASE("undirected chain extensions") {
  // A chain of n nodes orients without colliders in exactly n ways.
  for (std::size_t n = 2; n <= 6; ++n) {
    CHECK(enumerate_extensions(ground(parse(chain_of_undirected(n)))).size() == n);
  }
}

TEST_CASE("employee model extensions") {
  auto gm = ground(employees());
  auto ext = enumerate_extensions(gm);
  CHECK(ext.size() == 4);
  auto signature = independence_signature(gm);
  for (const auto& e : ext) {
    CHECK(e.fully_directed());
    CHECK(e.acyclic());
    CHECK(independence_signature(e) == signature);
  }
}

TEST_CASE("guards") {
  CHECK_THROWS_AS(enumerate_extensions(ground(parse(chain_of_undirected(14)))), TooManyAmbiguousFactors);
  std::string big = "logvar E {";
  for (int i = 0; i < 12; ++i) big += (i ? ", e" : "e") + std::to_string(i);
  big += "}\nprv A(E) range {x, y, z, w}\nprv B range {t, f}\nparfactor f(A(E), ->B) uniform\n";
  auto m = parse(big);
  CHECK_THROWS_AS(exhaustive_joint(ground(m)), StateSpaceTooLarge);
  CHECK_THROWS_AS(brute_force_do(m, DoQuery{{GroundAtom{1, {}}}, {}}), StateSpaceTooLarge);
}

TEST_CASE("no targets gives the plain marginal") {
  auto m = seeded_employees();
  auto gm = ground(m);
  auto answer = brute_force_do(m, DoQuery{{GroundAtom{2, {}}}, {}});
  REQUIRE(answer.results.size() == 1);
  CHECK(answer.unique);
  auto brute = liftdo::testing::brute_marginal(gm, {gm.index_of("Rev")});
  for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(answer.results[0].distribution.probs[i] - brute[i]) <= 1e-12);
}

TEST_CASE("employee interventions") {
  auto m = seeded_employees();
  auto comp = brute_force_do(m, DoQuery{{GroundAtom{2, {}}}, {{TargetSpec{0, std::vector<Tuple>{{0}}}, 2}}});
  CHECK(comp.results.size() == 2);
  CHECK_FALSE(comp.unique);
  auto sal = brute_force_do(m, DoQuery{{GroundAtom{2, {}}}, {{TargetSpec{1, std::vector<Tuple>{{0}}}, 2}}});
  CHECK(sal.results.size() == 1);
  CHECK(sal.unique);
}

TEST_CASE("fully directed input matches the truncated factorisation") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    auto fx = liftdo::testing::random_fixture(seed, 3);
    auto gm = ground(fx.model);
    for (const auto& e : enumerate_extensions(gm)) {
      auto clamp = clamped_atoms(fx.model, e, fx.query.targets);
      auto qs = query_atoms(e, fx.query);
      auto literal = literal_do_distribution(e, exhaustive_joint(e), clamp, qs);
      auto eliminated = post_intervention_distribution(e, clamp, qs);
      CHECK(linf_distance(literal, eliminated) <= 1e-9);
    }
  }
  auto m = parse(
      "prv A range {t, f}\nprv B range {t, f}\n"
      "parfactor pa(A) table { (t) = 0.3 (f) = 0.7 }\n"
      "parfactor f(A, ->B) table { (t, t) = 0.9 (t, f) = 0.1 (f, t) = 0.2 (f, f) = 0.8 }\n");
  DoQuery dq{{GroundAtom{1, {}}}, {{TargetSpec{0, std::nullopt}, 0}}};
  auto answer = brute_force_do(m, dq);
  REQUIRE(answer.results.size() == 1);
  CHECK(answer.results[0].distribution.probs[0] == doctest::Approx(0.9).epsilon(1e-14));
  CHECK(linf_distance(answer.results[0].distribution, post_intervention_distribution(m, dq)) <= 1e-12);
}

TEST_CASE("results do not depend on extension order") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto fx = liftdo::testing::random_fixture(seed, 6, 1);
    auto gm = ground(fx.model);
    auto ext = enumerate_extensions(gm);
    auto clamp = clamped_atoms(fx.model, gm, fx.query.targets);
    auto qs = query_atoms(gm, fx.query);
    auto collect = [&](const std::vector<GroundModel>& order) {
      std::vector<DoResult> results;
      for (const auto& e : order) add_result(results, literal_do_distribution(e, exhaustive_joint(e), clamp, qs), {});
      return results;
    };
    auto forward = collect(ext);
    std::reverse(ext.begin(), ext.end());
    auto backward = collect(ext);
    std::vector<Distribution> a, b;
    for (const auto& r : forward) a.push_back(r.distribution);
    for (const auto& r : backward) b.push_back(r.distribution);
    CHECK(matched_distance(a, b) <= 1e-12);
    auto answer = brute_force_do(fx.model, fx.query);
    CHECK(matched_distance(a, distributions(answer)) <= 1e-12);
  }
}

TEST_CASE("independence signature detects a new collider") {
  auto chain = ground(parse(chain_of_undirected(3)));
  auto collider = ground(parse(
      "prv A0 range {t, f}\nprv A1 range {t, f}\nprv A2 range {t, f}\n"
      "parfactor f0(A0, ->A1) uniform\nparfactor f1(A2, ->A1) uniform\n"));
  CHECK(independence_signature(chain) != independence_signature(collider));
  auto flipped = ground(parse(
      "prv A0 range {t, f}\nprv A1 range {t, f}\nprv A2 range {t, f}\n"
      "parfactor f0(A1, ->A0) uniform\nparfactor f1(A1, ->A2) uniform\n"));
  CHECK(independence_signature(chain) == independence_signature(flipped));
}
