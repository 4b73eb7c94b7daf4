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

#include "liftdo/factor.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

namespace liftdo {

TableFactor::TableFactor(std::vector<std::size_t> vars, std::vector<std::size_t> card,
                         std::vector<double> values)
    : vars_(std::move(vars)), card_(std::move(card)), values_(std::move(values)) {
  std::size_t n = 1;
  for (auto c : card_) n *= c;
  if (vars_.size() != card_.size() || values_.size() != n || !std::is_sorted(vars_.begin(), vars_.end())) {
    throw std::invalid_argument("malformed table factor");
  }
}

bool TableFactor::contains(std::size_t var) const {
  return std::binary_search(vars_.begin(), vars_.end(), var);
}

double TableFactor::at(std::span<const std::size_t> assignment_by_position) const {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < vars_.size(); ++i) idx = idx * card_[i] + assignment_by_position[i];
  return values_[idx];
}

namespace {

// Stride of each union variable inside `f` (0 when absent).
std::vector<std::size_t> strides_in(const TableFactor& f, const std::vector<std::size_t>& vars) {
  std::vector<std::size_t> own(f.vars().size(), 1);
  for (std::size_t i = f.vars().size(); i-- > 1;) own[i - 1] = own[i] * f.card()[i];
  std::vector<std::size_t> out(vars.size(), 0);
  for (std::size_t i = 0, j = 0; i < vars.size(); ++i) {
    if (j < f.vars().size() && f.vars()[j] == vars[i]) out[i] = own[j++];
  }
  return out;
}

}  // namespace

TableFactor TableFactor::product(const TableFactor& other) const {
  std::vector<std::size_t> vars;
  std::vector<std::size_t> card;
  std::size_t i = 0, j = 0;
  while (i < vars_.size() || j < other.vars_.size()) {
    if (j == other.vars_.size() || (i < vars_.size() && vars_[i] < other.vars_[j])) {
      vars.push_back(vars_[i]);
      card.push_back(card_[i++]);
    } else if (i == vars_.size() || other.vars_[j] < vars_[i]) {
      vars.push_back(other.vars_[j]);
      card.push_back(other.card_[j++]);
    } else {
      if (card_[i] != other.card_[j]) throw std::invalid_argument("cardinality mismatch in product");
      vars.push_back(vars_[i]);
      card.push_back(card_[i]);
      ++i;
      ++j;
    }
  }
  std::size_t n = 1;
  for (auto c : card) n *= c;
  auto sa = strides_in(*this, vars);
  auto sb = strides_in(other, vars);
  std::vector<double> values(n);
  std::vector<std::size_t> idx(vars.size(), 0);
  std::size_t ia = 0, ib = 0;
  for (std::size_t k = 0; k < n; ++k) {
    values[k] = values_[ia] * other.values_[ib];
    for (std::size_t d = vars.size(); d-- > 0;) {
      ++idx[d];
      ia += sa[d];
      ib += sb[d];
      if (idx[d] < card[d]) break;
      ia -= sa[d] * card[d];
      ib -= sb[d] * card[d];
      idx[d] = 0;
    }
  }
  return TableFactor(std::move(vars), std::move(card), std::move(values));
}

TableFactor TableFactor::sum_out(std::size_t var) const {
  auto it = std::lower_bound(vars_.begin(), vars_.end(), var);
  if (it == vars_.end() || *it != var) return *this;
  const auto pos = static_cast<std::size_t>(it - vars_.begin());
  std::size_t inner = 1;
  for (std::size_t i = pos + 1; i < card_.size(); ++i) inner *= card_[i];
  const std::size_t k = card_[pos];
  const std::size_t outer = values_.size() / (inner * k);
  std::vector<double> values(outer * inner, 0.0);
  for (std::size_t o = 0; o < outer; ++o) {
    for (std::size_t v = 0; v < k; ++v) {
      for (std::size_t in = 0; in < inner; ++in) {
        values[o * inner + in] += values_[(o * k + v) * inner + in];
      }
    }
  }
  auto vars = vars_;
  auto card = card_;
  vars.erase(vars.begin() + static_cast<std::ptrdiff_t>(pos));
  card.erase(card.begin() + static_cast<std::ptrdiff_t>(pos));
  return TableFactor(std::move(vars), std::move(card), std::move(values));
}

TableFactor TableFactor::reduce(std::size_t var, std::size_t value) const {
  auto it = std::lower_bound(vars_.begin(), vars_.end(), var);
  if (it == vars_.end() || *it != var) return *this;
  const auto pos = static_cast<std::size_t>(it - vars_.begin());
  std::size_t inner = 1;
  for (std::size_t i = pos + 1; i < card_.size(); ++i) inner *= card_[i];
  const std::size_t k = card_[pos];
  if (value >= k) throw std::out_of_range("reduce: value outside range");
  const std::size_t outer = values_.size() / (inner * k);
  std::vector<double> values(outer * inner);
  for (std::size_t o = 0; o < outer; ++o) {
    for (std::size_t in = 0; in < inner; ++in) values[o * inner + in] = values_[(o * k + value) * inner + in];
  }
  auto vars = vars_;
  auto card = card_;
  vars.erase(vars.begin() + static_cast<std::ptrdiff_t>(pos));
  card.erase(card.begin() + static_cast<std::ptrdiff_t>(pos));
  return TableFactor(std::move(vars), std::move(card), std::move(values));
}

double TableFactor::sum() const {
  double s = 0;
  for (double v : values_) s += v;
  return s;
}

double TableFactor::max() const { return *std::max_element(values_.begin(), values_.end()); }

void TableFactor::scale(double s) {
  for (double& v : values_) v *= s;
}

double TableFactor::normalize() {
  double s = sum();
  if (s > 0) scale(1.0 / s);
  return s;
}

std::vector<std::size_t> min_degree_order(const std::vector<TableFactor>& factors,
                                          std::span<const std::size_t> keep) {
  std::map<std::size_t, std::set<std::size_t>> adj;
  for (const auto& f : factors) {
    for (auto a : f.vars()) {
      auto& s = adj[a];
      for (auto b : f.vars()) {
        if (a != b) s.insert(b);
      }
    }
  }
  std::set<std::size_t> keep_set(keep.begin(), keep.end());
  std::set<std::size_t> pending;
  for (const auto& [v, _] : adj) {
    if (!keep_set.count(v)) pending.insert(v);
  }
  std::vector<std::size_t> order;
  while (!pending.empty()) {
    std::size_t best = *pending.begin();
    std::size_t best_deg = adj[best].size();
    for (auto v : pending) {
      if (adj[v].size() < best_deg) {
        best = v;
        best_deg = adj[v].size();
      }
    }
    const auto nb = adj[best];
    for (auto a : nb) {
      adj[a].erase(best);
      for (auto b : nb) {
        if (a != b) adj[a].insert(b);
      }
    }
    adj.erase(best);
    pending.erase(best);
    order.push_back(best);
  }
  return order;
}

EliminationResult eliminate(std::vector<TableFactor> factors, std::span<const std::size_t> keep,
                            const EliminationOptions& options) {
  auto order = options.order ? *options.order : min_degree_order(factors, keep);
  EliminationResult result;
  auto rescale = [&](TableFactor& f) {
    if (!options.rescale) return;
    double mx = f.max();
    if (mx > 0 && std::isfinite(mx)) {
      f.scale(1.0 / mx);
      result.log_scale += std::log(mx);
    }
  };
  for (auto var : order) {
    TableFactor joined;
    std::vector<TableFactor> rest;
    bool any = false;
    for (auto& f : factors) {
      if (f.contains(var)) {
        joined = any ? joined.product(f) : std::move(f);
        any = true;
      } else {
        rest.push_back(std::move(f));
      }
    }
    if (!any) continue;
    auto reduced = joined.sum_out(var);
    rescale(reduced);
    rest.push_back(std::move(reduced));
    factors = std::move(rest);
  }
  TableFactor out;
  for (const auto& f : factors) out = out.product(f);
  rescale(out);
  result.factor = std::move(out);
  return result;
}

}  // namespace liftdo
