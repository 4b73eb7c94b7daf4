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
#include <vector>

#include "liftdo/model.hpp"

namespace liftdo {

/// Replaces every all-ones (`uniform`) table with pseudo-random potentials
/// in [0.1, 1.0): parfactors in declaration order, entries row-major, each
/// 0.1 + 0.9 * u with u the top 53 bits of the next std::mt19937_64 draw
/// scaled to [0, 1). Other tables are left alone.
void fill_uniform_potentials(Model& m, std::uint64_t seed);

struct BenchRow {
  std::size_t domain_size = 0;
  std::size_t lifted_choice_count = 0;
  std::size_t ground_bound_exponent = 0;  // bound = 2^exponent
  double wall_time_ms = 0;
};

/// Sets the domain of every logvar of `prv` (and every logvar sharing that
/// domain) to `size` constants, keeping existing names and generating new
/// ones. Explicit constraint tuples pointing past the new size are dropped.
Model resize_domains(const Model& m, std::size_t prv, std::size_t size);

/// Per domain size: the number of parent choices for do(prv = first value)
/// with the first grounding of the first other PRV as query, the analytic
/// ground bound 2^(Σ over groundings of prv of their undirected ground
/// neighbour counts), and the wall time of the full lifted query.
std::vector<BenchRow> run_bench(const Model& m, std::size_t prv, const std::vector<std::size_t>& sizes);

std::string bench_csv(const std::vector<BenchRow>& rows);

}  // namespace liftdo
