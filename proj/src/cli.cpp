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

#include "liftdo/cli.hpp"

#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "liftdo/bench.hpp"
#include "liftdo/dsep.hpp"
#include "liftdo/grounding.hpp"
#include "liftdo/inference.hpp"
#include "liftdo/oracle.hpp"
#include "liftdo/query.hpp"
#include "liftdo/shattering.hpp"
#include "liftdo/validate.hpp"

namespace liftdo {

namespace {

std::string set_text(const std::vector<std::string>& names) {
  std::string s = "{";
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) s += ",";
    s += names[i];
  }
  return s + "}";
}

ParentChoiceText choice_text(const ChoiceLabel& label) {
  ParentChoiceText out;
  for (const auto& [target, parents] : label) out.push_back({target, set_text(parents)});
  return out;
}

std::vector<std::pair<std::string, double>> probabilities(const Distribution& d) {
  std::vector<std::pair<std::string, double>> out;
  for (std::size_t i = 0; i < d.probs.size(); ++i) out.emplace_back(d.labels[i], d.probs[i]);
  return out;
}

struct Failure {
  int code;
};

Model load(const std::string& path, std::ostream& err, bool check = true) {
  Model m;
  try {
    m = read_model_file(path);
  } catch (const ParseError& e) {
    err << e.what() << "\n";
    throw Failure{kParseFailed};
  } catch (const std::exception& e) {
    err << e.what() << "\n";
    throw Failure{kParseFailed};
  }
  if (check) {
    auto report = validate(m);
    if (!report.ok) {
      err << report.to_string();
      throw Failure{kValidationFailed};
    }
  }
  return m;
}

void write_output(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write '" + path + "'");
  f << text;
}

}  // namespace

QueryResult to_result(const std::string& query, const DoAnswer& answer) {
  QueryResult r;
  r.query = query;
  r.kind = "interventional";
  r.unique = answer.unique;
  r.parent_choice_count = answer.choice_count;
  for (const auto& res : answer.results) {
    ResultDistribution d;
    d.parent_choice = choice_text(res.choices.front());
    for (std::size_t i = 1; i < res.choices.size(); ++i) d.equivalent_parent_choices.push_back(choice_text(res.choices[i]));
    d.probabilities = probabilities(res.distribution);
    r.distributions.push_back(std::move(d));
  }
  return r;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lifted causal inference in partially directed parametric causal factor graphs", "liftdo"};
  app.require_subcommand(1);

  std::string model_path, expr, output, target;
  std::optional<std::uint64_t> seed;
  bool use_oracle = false, lifted = false;
  std::vector<std::size_t> sizes{3, 5, 10};

  auto* validate_cmd = app.add_subcommand("validate", "Check a model file");
  validate_cmd->add_option("model", model_path, "Model file")->required();

  auto* query_cmd = app.add_subcommand("query", "Answer an observational or interventional query");
  query_cmd->add_option("model", model_path, "Model file")->required();
  query_cmd->add_option("query", expr, "e.g. \"P(Rev | do(Comp(alice)=high))\"")->required();
  query_cmd->add_flag("--oracle", use_oracle, "Use the brute-force ground reference");
  query_cmd->add_option("--seed", seed, "Fill uniform tables with seeded random potentials");
  query_cmd->add_option("--output", output, "Write the result document to a file");

  auto* dsep_cmd = app.add_subcommand("dsep", "Test d-separation \"X ; Y | Z\"");
  dsep_cmd->add_option("model", model_path, "Model file")->required();
  dsep_cmd->add_option("query", expr, "e.g. \"Comp(alice) ; Sal(bob) | Rev\"")->required();
  dsep_cmd->add_flag("--lifted", lifted, "Query whole PRVs on the lifted graph");

  auto* bench_cmd = app.add_subcommand("bench", "Parent-choice counts over growing domains (CSV)");
  bench_cmd->add_option("model", model_path, "Model file")->required();
  bench_cmd->add_option("target", target, "PRV to intervene on, e.g. Comp(E)")->required();
  bench_cmd->add_option("--domain-sizes", sizes, "Comma-separated domain sizes")->delimiter(',');
  bench_cmd->add_option("--seed", seed, "Fill uniform tables with seeded random potentials");

  auto* ground_cmd = app.add_subcommand("ground", "Print the ground model as a model file");
  ground_cmd->add_option("model", model_path, "Model file")->required();
  ground_cmd->add_option("--output", output, "Write to a file");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (validate_cmd->parsed()) {
      auto m = load(model_path, err, false);
      auto report = validate(m);
      out << report.to_string();
      return report.ok ? kOk : kValidationFailed;
    }

    if (query_cmd->parsed()) {
      auto m = load(model_path, err);
      if (seed) fill_uniform_potentials(m, *seed);
      ParsedQuery q;
      try {
        q = parse_query(m, expr);
        if (!q.interventional) {
          auto gm = ground(m);
          std::vector<std::size_t> qs;
          for (const auto& a : q.query) qs.push_back(*gm.find(a));
          Evidence ev;
          for (const auto& [a, v] : q.evidence) {
            auto idx = *gm.find(a);
            if (std::find(qs.begin(), qs.end(), idx) != qs.end()) throw QueryError("query atom also observed");
            if (ev.count(idx) && ev[idx] != v) throw QueryError("conflicting evidence");
            ev[idx] = v;
          }
          auto d = joint_marginal(gm, qs, ev);
          QueryResult r;
          r.query = expr;
          r.kind = "observational";
          r.unique = true;
          r.parent_choice_count = 0;
          r.distributions.push_back({{}, {}, probabilities(d)});
          write_output(emit_result(r), output, out);
          return kOk;
        }
        auto answer = use_oracle ? brute_force_do(m, q.do_query()) : lifted_do_query(m, q.do_query());
        write_output(emit_result(to_result(expr, answer)), output, out);
        return kOk;
      } catch (const QueryTargetOverlap& e) {
        err << "query/target overlap: " << e.what() << "\n";
        return kTargetOverlap;
      } catch (const TooManyAmbiguousFactors& e) {
        err << "oracle guard: " << e.what() << "\n";
        return kOracleGuard;
      } catch (const StateSpaceTooLarge& e) {
        err << "oracle guard: " << e.what() << "\n";
        return kOracleGuard;
      } catch (const QueryError& e) {
        err << "malformed query: " << e.what() << "\n";
        return kBadQuery;
      } catch (const LookupError& e) {
        err << "malformed query: " << e.what() << "\n";
        return kBadQuery;
      }
    }

    if (dsep_cmd->parsed()) {
      auto m = load(model_path, err);
      SepQuery q;
      try {
        q = parse_sep_query(m, expr, lifted);
      } catch (const std::exception& e) {
        err << "malformed query: " << e.what() << "\n";
        return kBadQuery;
      }
      bool sep;
      if (!lifted) {
        sep = d_separated(ground(m), q);
      } else {
        try {
          sep = d_separated_lifted(m, q);
        } catch (const UnsupportedLiftedQuery&) {
          auto gm = ground(m);
          SepQuery g;
          auto expand = [&](const std::vector<std::size_t>& prvs, std::vector<std::size_t>& atoms) {
            for (auto p : prvs) {
              for (const auto& t : m.groundings(p)) atoms.push_back(*gm.find(GroundAtom{p, t}));
            }
          };
          expand(q.x, g.x);
          expand(q.y, g.y);
          expand(q.z, g.z);
          sep = d_separated(gm, g);
        }
      }
      out << (sep ? "true" : "false") << "\n";
      return kOk;
    }

    if (bench_cmd->parsed()) {
      auto m = load(model_path, err);
      if (seed) fill_uniform_potentials(m, *seed);
      auto name = target.substr(0, target.find('('));
      auto prv = m.find_prv(name);
      if (!prv) {
        err << "unknown PRV '" << name << "'\n";
        return kBadQuery;
      }
      out << bench_csv(run_bench(m, *prv, sizes));
      return kOk;
    }

    if (ground_cmd->parsed()) {
      auto m = load(model_path, err);
      write_output(serialize_model(ground_as_model(m)), output, out);
      return kOk;
    }
  } catch (const Failure& f) {
    return f.code;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kValidationFailed;
  }
  return kOk;
}

}  // namespace liftdo
