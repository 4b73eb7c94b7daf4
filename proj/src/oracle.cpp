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

#include "liftdo/oracle.hpp"

#include <algorithm>
#include <map>

#include "liftdo/dsep.hpp"

namespace liftdo {

std::vector<char> independence_signature(const GroundModel& gm) {
  const auto n = gm.size();
  std::vector<char> out;
  std::vector<std::vector<std::size_t>> zs{{}};
  for (std::size_t a = 0; a < n; ++a) {
    zs.push_back({a});
    for (std::size_t b = a + 1; b < n; ++b) zs.push_back({a, b});
  }
  for (std::size_t x = 0; x < n; ++x) {
    for (const auto& z : zs) {
      if (std::find(z.begin(), z.end(), x) != z.end()) continue;
      auto reached = d_connected(gm, {x}, z);
      for (std::size_t y = x + 1; y < n; ++y) {
        if (std::find(z.begin(), z.end(), y) == z.end()) out.push_back(reached[y] ? 0 : 1);
      }
    }
  }
  return out;
}

std::vector<GroundModel> enumerate_extensions(const GroundModel& gm) {
  auto amb = gm.ambiguous_factors();
  if (amb.size() > kMaxAmbiguousFactors) {
    throw TooManyAmbiguousFactors(std::to_string(amb.size()) + " undirected ground factors (limit " +
                                  std::to_string(kMaxAmbiguousFactors) + ")");
  }
  // Candidate CHILD positions: the first position of each distinct atom.
  std::vector<std::vector<std::size_t>> options;
  for (auto f : amb) {
    const auto& atoms = gm.factors[f].atoms;
    std::vector<std::size_t> pos;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      if (std::find(atoms.begin(), atoms.begin() + static_cast<std::ptrdiff_t>(i), atoms[i]) ==
          atoms.begin() + static_cast<std::ptrdiff_t>(i)) {
        pos.push_back(i);
      }
    }
    options.push_back(std::move(pos));
  }
  const auto reference = independence_signature(gm);
  std::vector<GroundModel> out;
  std::vector<std::size_t> idx(amb.size(), 0);
  for (;;) {
    GroundModel cand = gm;
    for (std::size_t i = 0; i < amb.size(); ++i) cand.factors[amb[i]].child_index = options[i][idx[i]];
    if (cand.acyclic() && independence_signature(cand) == reference) out.push_back(std::move(cand));
    std::size_t k = amb.size();
    while (k > 0 && ++idx[k - 1] == options[k - 1].size()) {
      idx[k - 1] = 0;
      --k;
    }
    if (k == 0) break;
  }
  return out;
}

std::vector<double> exhaustive_joint(const GroundModel& gm) {
  const auto states = gm.state_space();
  if (states > kMaxStateSpace) {
    throw StateSpaceTooLarge(std::to_string(states) + " joint states (limit " + std::to_string(kMaxStateSpace) + ")");
  }
  std::vector<double> joint(states);
  Assignment a{std::vector<std::size_t>(gm.size(), 0)};
  double z = 0;
  std::size_t i = 0;
  do {
    joint[i] = gm.unnormalized(a);
    z += joint[i++];
  } while (next_assignment(gm, a));
  for (double& p : joint) p /= z;
  return joint;
}

Distribution literal_do_distribution(const GroundModel& full, const std::vector<double>& joint,
                                     const std::vector<std::pair<std::size_t, std::size_t>>& clamp,
                                     const std::vector<std::size_t>& query) {
  const auto n = full.size();
  std::map<std::size_t, std::size_t> clamped(clamp.begin(), clamp.end());
  std::vector<std::size_t> stride(n, 1);
  for (std::size_t i = n; i-- > 1;) stride[i - 1] = stride[i] * full.cardinality(i);

  // P(r_i | pa_i) for every non-target atom, as a table indexed by the
  // family values in (parents..., child) order.
  struct Cpt {
    std::vector<std::size_t> family;  // parents then child
    std::vector<double> table;
  };
  std::vector<Cpt> cpts(n);
  auto family_index = [&](const std::vector<std::size_t>& fam, std::size_t state) {
    std::size_t idx = 0;
    for (auto v : fam) idx = idx * full.cardinality(v) + (state / stride[v]) % full.cardinality(v);
    return idx;
  };
  for (std::size_t v = 0; v < n; ++v) {
    if (clamped.count(v)) continue;
    auto fam = full.parents(v);
    fam.push_back(v);
    std::size_t size = 1;
    for (auto u : fam) size *= full.cardinality(u);
    std::vector<double> marg(size, 0.0);
    for (std::size_t s = 0; s < joint.size(); ++s) marg[family_index(fam, s)] += joint[s];
    const auto k = full.cardinality(v);
    for (std::size_t row = 0; row < size; row += k) {
      double total = 0;
      for (std::size_t j = 0; j < k; ++j) total += marg[row + j];
      for (std::size_t j = 0; j < k; ++j) marg[row + j] /= total;
    }
    cpts[v] = {std::move(fam), std::move(marg)};
  }

  std::size_t qsize = 1;
  for (auto q : query) qsize *= full.cardinality(q);
  std::vector<double> probs(qsize, 0.0);
  for (std::size_t s = 0; s < joint.size(); ++s) {
    bool consistent = true;
    for (const auto& [a, val] : clamped) consistent = consistent && (s / stride[a]) % full.cardinality(a) == val;
    if (!consistent) continue;
    double p = 1.0;
    for (std::size_t v = 0; v < n; ++v) {
      if (!clamped.count(v)) p *= cpts[v].table[family_index(cpts[v].family, s)];
    }
    probs[family_index(query, s)] += p;
  }
  Distribution d;
  d.atoms = query;
  d.probs = std::move(probs);
  for (std::size_t row = 0; row < qsize; ++row) d.labels.push_back(distribution_label(full, query, row));
  return d;
}

DoAnswer brute_force_do(const Model& m, const DoQuery& dq) {
  check_do_query(m, dq);
  auto gm = ground(m);
  if (gm.state_space() > kMaxStateSpace) {
    throw StateSpaceTooLarge(std::to_string(gm.state_space()) + " joint states (limit " +
                             std::to_string(kMaxStateSpace) + ")");
  }
  auto clamp = clamped_atoms(m, gm, dq.targets);
  auto query = query_atoms(gm, dq);
  auto extensions = enumerate_extensions(gm);
  auto joint = exhaustive_joint(gm);
  DoAnswer answer;
  answer.choice_count = extensions.size();
  for (const auto& ext : extensions) {
    ChoiceLabel label;
    for (const auto& [atom, _] : clamp) {
      std::vector<std::string> names;
      for (auto p : ext.parents(atom)) names.push_back(ext.atom_names[p]);
      label.emplace_back(ext.atom_names[atom], std::move(names));
    }
    add_result(answer.results, literal_do_distribution(ext, joint, clamp, query), std::move(label));
  }
  answer.unique = answer.results.size() == 1;
  return answer;
}

}  // namespace liftdo
