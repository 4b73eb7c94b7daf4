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
#include <optional>
#include <span>
#include <vector>

namespace liftdo {

/// Dense discrete factor over atom indices. `vars` is sorted ascending and
/// `values` is row-major with vars[0] varying slowest.
class TableFactor {
 public:
  TableFactor() : values_(1, 1.0) {}
  TableFactor(std::vector<std::size_t> vars, std::vector<std::size_t> card, std::vector<double> values);

  static TableFactor constant(double v) {
    TableFactor f;
    f.values_[0] = v;
    return f;
  }

  const std::vector<std::size_t>& vars() const { return vars_; }
  const std::vector<std::size_t>& card() const { return card_; }
  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }
  std::size_t size() const { return values_.size(); }

  bool contains(std::size_t var) const;
  double at(std::span<const std::size_t> assignment_by_position) const;

  TableFactor product(const TableFactor& other) const;
  TableFactor sum_out(std::size_t var) const;
  TableFactor reduce(std::size_t var, std::size_t value) const;

  double sum() const;
  double max() const;
  void scale(double s);
  /// Divides by the total; returns the total.
  double normalize();

 private:
  std::vector<std::size_t> vars_;
  std::vector<std::size_t> card_;
  std::vector<double> values_;
};

struct EliminationOptions {
  /// Explicit order for the eliminated variables; min-degree when empty.
  std::optional<std::vector<std::size_t>> order;
  /// Renormalise intermediate factors after every step. The returned log
  /// scale keeps the total mass recoverable.
  bool rescale = true;
};

struct EliminationResult {
  TableFactor factor;   // over the kept variables, sorted
  double log_scale = 0;  // true factor = factor * exp(log_scale)
};

/// Sums every variable not in `keep` out of the product of `factors`.
EliminationResult eliminate(std::vector<TableFactor> factors, std::span<const std::size_t> keep,
                            const EliminationOptions& options = {});

/// Min-degree order (ties broken by smallest index) for eliminating every
/// variable of `factors` not in `keep`.
std::vector<std::size_t> min_degree_order(const std::vector<TableFactor>& factors,
                                          std::span<const std::size_t> keep);

}  // namespace liftdo
