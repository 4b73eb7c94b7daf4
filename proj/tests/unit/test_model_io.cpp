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


#include <random>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "liftdo/model_io.hpp"
#include "support.hpp"

using namespace liftdo;
using liftdo::testing::employees;
using liftdo::testing::parse;

namespace {

std::string parse_error_message(const std::string& text) {
  try {
    parse(text);
  } catch (const ParseError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("employee fixture parses") {
  auto m = employees();
  CHECK(m.logvars.size() == 1);
  CHECK(m.prvs.size() == 3);
  CHECK(m.parfactors.size() == 3);
  CHECK(m.logvars[0].domain == std::vector<std::string>{"alice", "bob", "charlie"});
  CHECK(m.parfactors[1].child() == 1u);
  CHECK(m.parfactors[0].fully_undirected());
  CHECK(m.parfactors[0].table == std::vector<double>(9, 1.0));
}

TEST_CASE("round trip") {
  auto m = employees();
  CHECK(parse(serialize_model(m)) == m);

  auto seeded = liftdo::testing::seeded_employees();
  auto again = parse(serialize_model(seeded));
  CHECK(again == seeded);
  for (std::size_t g = 0; g < seeded.parfactors.size(); ++g) {
    CHECK(again.parfactors[g].table == seeded.parfactors[g].table);
  }
  CHECK(serialize_model(again) == serialize_model(seeded));
}

TEST_CASE("round trip over random fixtures") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    auto fx = liftdo::testing::random_fixture(seed);
    CHECK(parse(serialize_model(fx.model)) == fx.model);
  }
}

TEST_CASE("structurally equal models serialize identically") {
  auto a = parse("logvar E {x, y}\nprv A(E) range {0, 1}\nparfactor f(A(E)) table { (0) = 0.5 (1) = 2 }\n");
  auto b = parse("# same model\nlogvar E {x,y}\n\nprv A(E) range {0,1}\nparfactor f(A(E)) table {\n  (1) = 2.0\n  (0) = 5e-1\n}\n");
  CHECK(a == b);
  CHECK(serialize_model(a) == serialize_model(b));
}

TEST_CASE("explicit constraints serialize in domain order") {
  auto m = parse(
      "logvar E {alice, bob, charlie}\n"
      "prv A(E) range {t, f}\n"
      "parfactor g(A(E)) where (E) in {(charlie), (bob)} uniform\n"
      "parfactor h(A(E)) where (E) in {(alice)} uniform\n");
  auto text = serialize_model(m);
  CHECK(text.find("(E) in {(bob), (charlie)}") != std::string::npos);
  CHECK(parse(text) == m);
}

TEST_CASE("parse errors") {
  CHECK(parse_error_message("").find("expected declaration") != std::string::npos);
  CHECK(parse_error_message("# nothing\n").find("expected declaration") != std::string::npos);
  CHECK(parse_error_message("logvar E {a}\nparfactor g(Foo(E)) uniform\n").find("Foo") != std::string::npos);
  CHECK(parse_error_message("logvar E {a}\nlogvar E {b}\nprv A(E) range {t}\nparfactor g(A(E)) uniform\n")
            .find("duplicate") != std::string::npos);

  try {
    parse("logvar E {a, b}\nprv A(E) range {t, f}\nparfactor g(A(E)) tabel { }\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(e.column() == 19);
    CHECK(e.snippet() == "parfactor g(A(E)) tabel { }");
  }
}

TEST_CASE("parser is total under mutation") {
  std::string base = serialize_model(liftdo::testing::seeded_employees());
  const std::string alphabet = "(){},;=->#. \n0123456789aEx";
  std::mt19937_64 rng(7);
  int models = 0, errors = 0;
  for (int round = 0; round < 2000; ++round) {
    std::string text = base;
    int edits = 1 + static_cast<int>(rng() % 4);
    for (int e = 0; e < edits; ++e) {
      std::size_t pos = rng() % (text.size() + 1);
      switch (rng() % 3) {
        case 0:
          if (pos < text.size()) text.erase(pos, 1 + rng() % 5);
          break;
        case 1:
          text.insert(pos, 1, alphabet[rng() % alphabet.size()]);
          break;
        default:
          text = text.substr(0, pos);
      }
    }
    try {
      parse(text);
      ++models;
    } catch (const ParseError& e) {
      CHECK(e.line() >= 1);
      CHECK(e.column() >= 1);
      ++errors;
    }
  }
  CHECK(models + errors == 2000);
  CHECK(errors > 0);
}

TEST_CASE("result documents") {
  QueryResult single{"P(Rev | do(Sal(alice)=high))", "interventional", true, 1, {}};
  single.distributions.push_back({{{"Sal(alice)", "{Comp(alice), Rev}"}}, {}, {{"low", 0.25}, {"medium", 0.5}, {"high", 0.25}}});
  auto doc = nlohmann::json::parse(emit_result(single));
  CHECK(doc["unique"] == true);
  CHECK(doc["distributions"].size() == 1);
  CHECK(doc["distributions"][0]["probabilities"]["medium"] == 0.5);

  QueryResult two{"P(Rev | do(Comp(alice)=high))", "interventional", false, 2, {}};
  two.distributions.push_back({{{"Comp(alice)", "{}"}}, {}, {{"low", 0.2}, {"medium", 0.3}, {"high", 0.5}}});
  two.distributions.push_back({{{"Comp(alice)", "{Rev}"}}, {}, {{"low", 0.1}, {"medium", 0.3}, {"high", 0.6}}});
  doc = nlohmann::json::parse(emit_result(two));
  CHECK(doc["unique"] == false);
  REQUIRE(doc["distributions"].size() == 2);
  CHECK(doc["distributions"][0]["parent_choice"]["Comp(alice)"] == "{}");
  CHECK(doc["distributions"][1]["parent_choice"]["Comp(alice)"] == "{Rev}");

  QueryResult none{"P(Rev | do(Comp(alice)=high))", "interventional", false, 1, {}};
  auto text = emit_result(none);
  doc = nlohmann::json::parse(text);
  CHECK(doc["unique"] == false);
  CHECK(doc["distributions"].empty());
  CHECK(text == emit_result(none));
}

TEST_CASE("result keys keep a fixed order") {
  QueryResult r{"P(Rev)", "observational", true, 0, {}};
  r.distributions.push_back({{}, {}, {{"low", 1.0 / 3}, {"medium", 1.0 / 3}, {"high", 1.0 / 3}}});
  auto text = emit_result(r);
  auto q = text.find("\"query\"");
  auto u = text.find("\"unique\"");
  auto d = text.find("\"distributions\"");
  CHECK(q < u);
  CHECK(u < d);
  CHECK(text.find("\"low\"") < text.find("\"medium\""));
  CHECK(text.find("\"medium\"") < text.find("\"high\""));
}
