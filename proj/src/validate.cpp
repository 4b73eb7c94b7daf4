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

#include "liftdo/validate.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <sstream>

namespace liftdo {

void ValidationReport::error(std::string message, std::string location) {
  ok = false;
  issues.push_back({Severity::kError, std::move(message), std::move(location)});
}

void ValidationReport::warning(std::string message, std::string location) {
  issues.push_back({Severity::kWarning, std::move(message), std::move(location)});
}

std::string ValidationReport::to_string() const {
  std::ostringstream os;
  for (const auto& issue : issues) {
    os << (issue.severity == Severity::kError ? "error" : "warning");
    if (!issue.location.empty()) os << " [" << issue.location << "]";
    os << ": " << issue.message << '\n';
  }
  os << (ok ? "model is valid" : "model is invalid") << '\n';
  return os.str();
}

namespace {

bool args_well_formed(const Model& m, const Parfactor& g) {
  for (const auto& arg : g.args) {
    if (arg.prv >= m.prvs.size()) return false;
    if (arg.logvars.size() != m.prvs[arg.prv].params.size()) return false;
    for (auto lv : arg.logvars) {
      if (lv >= m.logvars.size()) return false;
    }
  }
  return true;
}

void check_logvars(const Model& m, ValidationReport& report) {
  std::set<std::string> names;
  for (const auto& lv : m.logvars) {
    if (!names.insert(lv.name).second) report.error("duplicate logvar '" + lv.name + "'", lv.name);
    if (lv.domain.empty()) report.error("domain of logvar '" + lv.name + "' is empty", lv.name);
    std::set<std::string> seen;
    for (const auto& c : lv.domain) {
      if (!seen.insert(c).second) {
        report.error("constant '" + c + "' appears twice in domain of '" + lv.name + "'", lv.name);
      }
    }
  }
}

void check_prvs(const Model& m, ValidationReport& report) {
  std::set<std::string> names;
  for (const auto& p : m.prvs) {
    if (!names.insert(p.name).second) report.error("duplicate PRV '" + p.name + "'", p.name);
    if (p.range.empty()) report.error("range of PRV '" + p.name + "' is empty", p.name);
    std::set<std::string> seen;
    for (const auto& v : p.range) {
      if (!seen.insert(v).second) {
        report.error("range value '" + v + "' appears twice in '" + p.name + "'", p.name);
      }
    }
    for (auto lv : p.params) {
      if (lv >= m.logvars.size()) report.error("PRV '" + p.name + "' uses an unknown logvar", p.name);
    }
  }
}

void check_constraint(const Model& m, const Parfactor& g, ValidationReport& report) {
  auto expected = m.parfactor_logvars(g);
  auto given = g.constraint.logvars;
  std::sort(expected.begin(), expected.end());
  std::sort(given.begin(), given.end());
  if (std::adjacent_find(given.begin(), given.end()) != given.end()) {
    report.error("constraint lists a logvar twice", g.name);
    return;
  }
  if (expected != given) {
    report.error("constraint logvars differ from the logvars of the arguments", g.name);
    return;
  }
  if (!g.constraint.tuples) return;
  if (g.constraint.tuples->empty()) report.error("constraint admits no tuple", g.name);
  for (const auto& t : *g.constraint.tuples) {
    if (t.size() != g.constraint.logvars.size()) {
      report.error("constraint tuple has the wrong arity", g.name);
      return;
    }
    for (std::size_t j = 0; j < t.size(); ++j) {
      if (t[j] >= m.logvars[g.constraint.logvars[j]].domain.size()) {
        report.error("constraint tuple component outside the logvar domain", g.name);
        return;
      }
    }
  }
}

void check_parfactors(const Model& m, ValidationReport& report) {
  std::set<std::string> names;
  for (const auto& p : m.prvs) names.insert(p.name);
  std::set<std::string> factor_names;
  for (const auto& g : m.parfactors) {
    if (!factor_names.insert(g.name).second) report.error("duplicate parfactor '" + g.name + "'", g.name);
    if (names.count(g.name)) report.error("parfactor name '" + g.name + "' is also a PRV name", g.name);
    if (g.args.empty()) {
      report.error("parfactor has no arguments", g.name);
      continue;
    }
    if (!args_well_formed(m, g)) {
      report.error("argument refers to an unknown PRV or has the wrong number of logvars", g.name);
      continue;
    }
    for (const auto& arg : g.args) {
      const auto& prv = m.prvs[arg.prv];
      for (std::size_t i = 0; i < arg.logvars.size(); ++i) {
        if (prv.params[i] < m.logvars.size() &&
            m.logvars[arg.logvars[i]].domain != m.logvars[prv.params[i]].domain) {
          report.error("logvar '" + m.logvars[arg.logvars[i]].name + "' used for " + prv.name +
                           " does not have the domain of the declared parameter",
                       g.name);
        }
      }
    }
    if (g.child_count() > 1) report.error("more than one argument is marked as CHILD", g.name);

    if (g.table.size() != m.table_size(g)) {
      report.error("table has " + std::to_string(g.table.size()) + " entries, expected " +
                       std::to_string(m.table_size(g)),
                   g.name);
    } else {
      for (double v : g.table) {
        if (std::isnan(v)) {
          report.error("table row missing", g.name);
          break;
        }
        if (!(v > 0.0) || !std::isfinite(v)) {
          report.error("potentials must be finite and strictly positive", g.name);
          break;
        }
      }
    }
    check_constraint(m, g, report);
  }
}

void check_coverage(const Model& m, ValidationReport& report) {
  std::vector<std::set<Tuple>> covered(m.prvs.size());
  std::vector<bool> mentioned(m.prvs.size(), false);
  for (const auto& g : m.parfactors) {
    if (g.args.empty() || !args_well_formed(m, g)) continue;
    auto lvs = m.parfactor_logvars(g);
    auto given = g.constraint.logvars;
    std::sort(lvs.begin(), lvs.end());
    std::sort(given.begin(), given.end());
    for (const auto& arg : g.args) mentioned[arg.prv] = true;
    if (lvs != given) continue;
    for (const auto& t : m.tuples(g.constraint)) {
      if (t.size() != g.constraint.logvars.size()) continue;
      for (std::size_t pos = 0; pos < g.args.size(); ++pos) {
        covered[g.args[pos].prv].insert(m.project(g, pos, t));
      }
    }
  }
  for (std::size_t i = 0; i < m.prvs.size(); ++i) {
    if (!mentioned[i]) {
      report.error("PRV '" + m.prvs[i].name + "' is not an argument of any parfactor", m.prvs[i].name);
      continue;
    }
    bool params_ok = std::all_of(m.prvs[i].params.begin(), m.prvs[i].params.end(),
                                 [&](std::size_t lv) { return lv < m.logvars.size(); });
    if (!params_ok) continue;
    for (const auto& t : m.groundings(i)) {
      if (!covered[i].count(t)) {
        report.error("ground atom " + m.atom_name({i, t}) + " is not covered by any parfactor",
                     m.prvs[i].name);
      }
    }
  }
}

}  // namespace

std::vector<std::size_t> find_directed_cycle(const Model& m) {
  const std::size_t n = m.prvs.size();
  std::vector<std::set<std::size_t>> succ(n);
  for (const auto& g : m.parfactors) {
    if (g.child_count() != 1 || !args_well_formed(m, g)) continue;
    auto c = *g.child();
    for (std::size_t i = 0; i < g.args.size(); ++i) {
      if (i != c) succ[g.args[i].prv].insert(g.args[c].prv);
    }
  }
  enum Color { kWhite, kGrey, kBlack };
  std::vector<Color> color(n, kWhite);
  std::vector<std::size_t> stack;
  std::vector<std::size_t> cycle;
  std::function<bool(std::size_t)> visit = [&](std::size_t v) {
    color[v] = kGrey;
    stack.push_back(v);
    for (auto w : succ[v]) {
      if (color[w] == kGrey) {
        auto it = std::find(stack.begin(), stack.end(), w);
        cycle.assign(it, stack.end());
        cycle.push_back(w);
        return true;
      }
      if (color[w] == kWhite && visit(w)) return true;
    }
    stack.pop_back();
    color[v] = kBlack;
    return false;
  };
  for (std::size_t v = 0; v < n; ++v) {
    if (color[v] == kWhite && visit(v)) break;
  }
  return cycle;
}

ValidationReport validate(const Model& m) {
  ValidationReport report;
  check_logvars(m, report);
  check_prvs(m, report);
  check_parfactors(m, report);
  check_coverage(m, report);
  auto cycle = find_directed_cycle(m);
  if (!cycle.empty()) {
    std::string text;
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      if (i) text += " -> ";
      text += m.prvs[cycle[i]].name;
    }
    report.error("directed cycle: " + text);
  }
  return report;
}

}  // namespace liftdo
