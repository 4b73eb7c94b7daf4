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

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "liftdo/causal.hpp"
#include "liftdo/grounding.hpp"
#include "liftdo/inference.hpp"
#include "liftdo/model.hpp"

namespace liftdo::testing {

std::string fixture_path(const std::string& name);

/// The employee model with |D(E)| = n (alice, bob, charlie, e4, ...).
Model employees(std::size_t n = 3);
/// Employee model with seeded potentials.
Model seeded_employees(std::uint64_t seed = 42, std::size_t n = 3);

Model parse(const std::string& text);

// Reference computations by exhaustive enumeration, written without the
// library's elimination code.

double brute_z(const GroundModel& gm);
std::vector<double> brute_joint(const GroundModel& gm);  // last atom fastest
/// P(qs | ev), row-major over qs in the given order.
std::vector<double> brute_marginal(const GroundModel& gm, const std::vector<std::size_t>& qs,
                                   const std::vector<std::pair<std::size_t, std::size_t>>& ev = {});

/// Truncated factorisation as a literal nested sum, with each P(r | pa)
/// computed by brute force from the joint.
std::vector<double> literal_truncated_sum(const GroundModel& full,
                                          const std::vector<std::pair<std::size_t, std::size_t>>& clamp,
                                          const std::vector<std::size_t>& query);

/// d-separation by enumerating every simple path of the factor graph.
bool path_d_separated(const GroundModel& gm, const std::vector<std::size_t>& x, const std::vector<std::size_t>& y,
                      const std::vector<std::size_t>& z);

/// All single-atom SepQueries with |Z| <= max_z.
std::vector<std::tuple<std::size_t, std::size_t, std::vector<std::size_t>>> small_sep_queries(std::size_t atoms,
                                                                                                std::size_t max_z);

struct RandomFixture {
  Model model;
  DoQuery query;
  std::size_t ambiguous = 0;
};

/// A random relational Bayesian network with at most 10 ground atoms, shown
/// as its partially directed equivalence class (compelled edges directed,
/// plus some random background knowledge), with conditional-probability
/// potentials and a random query intervening on `targets` ground atoms. At
/// most `max_ambiguous` undirected ground factors.
RandomFixture random_fixture(std::uint64_t seed, std::size_t max_ambiguous = 6, std::size_t targets = 1);

/// Best L∞ distance over bijections between two result sets; infinity when
/// the sizes differ.
double matched_distance(const std::vector<Distribution>& a, const std::vector<Distribution>& b);
std::vector<Distribution> distributions(const DoAnswer& answer);

}  // namespace liftdo::testing
