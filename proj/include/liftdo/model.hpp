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

#include <compare>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace liftdo {

/// Indices into logvar domains. Component j of a constraint tuple indexes
/// the domain of the j-th constrained logvar.
using Tuple = std::vector<std::size_t>;

class LookupError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LogVar {
  std::string name;
  std::vector<std::string> domain;

  bool operator==(const LogVar&) const = default;
};

/// Parameterised random variable R(L1, ..., Ln); `params` index into the
/// model's logvars and may be empty.
struct Prv {
  std::string name;
  std::vector<std::size_t> params;
  std::vector<std::string> range;

  bool operator==(const Prv&) const = default;
};

/// (X, C_X). An empty `tuples` optional is TOP (the full cross product).
/// Explicit tuples are kept sorted and unique.
struct Constraint {
  std::vector<std::size_t> logvars;
  std::optional<std::vector<Tuple>> tuples;

  bool is_top() const { return !tuples.has_value(); }
  bool operator==(const Constraint&) const = default;
};

enum class EdgeDir { kUndirected, kChild };

/// One argument position of a parfactor. `logvars` are the logvars the PRV
/// is instantiated with at this position; they default to the declared
/// parameters but may be renamed (Friends(X, Y) over a PRV declared with
/// (P, P)) as long as the domains are identical.
struct Argument {
  std::size_t prv = 0;
  std::vector<std::size_t> logvars;
  EdgeDir dir = EdgeDir::kUndirected;

  bool operator==(const Argument&) const = default;
};

/// phi(A)|C. The table is dense, row-major over the argument ranges with the
/// first argument varying slowest.
struct Parfactor {
  std::string name;
  std::vector<Argument> args;
  std::vector<double> table;
  Constraint constraint;

  /// Position of the CHILD argument, if exactly one is marked.
  std::optional<std::size_t> child() const;
  std::size_t child_count() const;
  bool fully_undirected() const { return child_count() == 0; }

  bool operator==(const Parfactor&) const = default;
};

struct GroundAtom {
  std::size_t prv = 0;
  Tuple args;  // indices into the domains of the PRV's declared params

  auto operator<=>(const GroundAtom&) const = default;
};

/// A partially directed parametric causal factor graph. Variable nodes are
/// PRVs, factor nodes are parfactors; edge directions live on the parfactor
/// arguments.
class Model {
 public:
  std::vector<LogVar> logvars;
  std::vector<Prv> prvs;
  std::vector<Parfactor> parfactors;

  bool operator==(const Model&) const = default;

  std::optional<std::size_t> find_logvar(std::string_view name) const;
  std::optional<std::size_t> find_prv(std::string_view name) const;
  std::optional<std::size_t> find_parfactor(std::string_view name) const;
  std::size_t logvar_index(std::string_view name) const;  // throws LookupError
  std::size_t prv_index(std::string_view name) const;     // throws LookupError

  /// lv(g) in first-occurrence order over the arguments.
  std::vector<std::size_t> parfactor_logvars(const Parfactor& g) const;

  /// Constraint tuples, materialising TOP in lexicographic domain order.
  std::vector<Tuple> tuples(const Constraint& c) const;

  /// Number of tuples without materialising TOP.
  std::size_t tuple_count(const Constraint& c) const;

  /// All groundings of a PRV in lexicographic domain order.
  std::vector<Tuple> groundings(std::size_t prv) const;

  /// The grounding of argument `pos` of `g` under a constraint tuple of `g`.
  Tuple project(const Parfactor& g, std::size_t pos, const Tuple& binding) const;

  std::size_t table_size(const Parfactor& g) const;

  std::string atom_name(const GroundAtom& atom) const;
  /// PRV with its declared logvars, e.g. "Comp(E)" or "Rev".
  std::string prv_signature(std::size_t prv) const;
};

/// Row-major index of an argument value tuple in a parfactor table.
std::size_t table_index(const Model& m, const Parfactor& g,
                        const std::vector<std::size_t>& values);

}  // namespace liftdo
