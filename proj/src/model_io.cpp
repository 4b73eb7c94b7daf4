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

#include "liftdo/model_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "json.hpp"

namespace liftdo {

ParseError::ParseError(std::string origin, std::size_t line, std::size_t column,
                       std::string message, std::string snippet)
    : std::runtime_error(origin + ":" + std::to_string(line) + ":" + std::to_string(column) +
                         ": " + message + "\n  " + snippet + "\n  " +
                         std::string(column > 0 ? column - 1 : 0, ' ') + "^"),
      origin_(std::move(origin)),
      line_(line),
      column_(column),
      message_(std::move(message)),
      snippet_(std::move(snippet)) {}

namespace {

enum class Tok { kIdent, kNumber, kLBrace, kRBrace, kLParen, kRParen, kComma, kEquals, kArrow, kEnd };

struct Token {
  Tok kind = Tok::kEnd;
  std::string text;
  std::size_t line = 1;
  std::size_t column = 1;
};

const char* describe(Tok t) {
  switch (t) {
    case Tok::kIdent: return "identifier";
    case Tok::kNumber: return "number";
    case Tok::kLBrace: return "'{'";
    case Tok::kRBrace: return "'}'";
    case Tok::kLParen: return "'('";
    case Tok::kRParen: return "')'";
    case Tok::kComma: return "','";
    case Tok::kEquals: return "'='";
    case Tok::kArrow: return "'->'";
    case Tok::kEnd: return "end of input";
  }
  return "token";
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

class Parser {
 public:
  explicit Parser(const ModelSource& src) : src_(src) { split_lines(); }

  Model run() {
    advance();
    if (cur_.kind == Tok::kEnd) fail(cur_, "expected declaration");
    while (cur_.kind != Tok::kEnd) {
      if (cur_.kind != Tok::kIdent) fail(cur_, "expected declaration");
      if (cur_.text == "logvar") {
        parse_logvar();
      } else if (cur_.text == "prv") {
        parse_prv();
      } else if (cur_.text == "parfactor") {
        parse_parfactor();
      } else {
        fail(cur_, "expected declaration, found '" + cur_.text + "'");
      }
    }
    return std::move(model_);
  }

 private:
  void split_lines() {
    std::size_t start = 0;
    for (std::size_t i = 0; i <= src_.text.size(); ++i) {
      if (i == src_.text.size() || src_.text[i] == '\n') {
        lines_.push_back(src_.text.substr(start, i - start));
        start = i + 1;
      }
    }
  }

  [[noreturn]] void fail(const Token& at, const std::string& message) const {
    std::size_t line = std::min(at.line, lines_.size());
    throw ParseError(src_.origin, line, at.column, message, lines_.empty() ? "" : lines_[line - 1]);
  }

  char peek(std::size_t off = 0) const {
    return pos_ + off < src_.text.size() ? src_.text[pos_ + off] : '\0';
  }

  void bump() {
    if (src_.text[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void advance() {
    for (;;) {
      while (pos_ < src_.text.size() && std::isspace(static_cast<unsigned char>(peek()))) bump();
      if (peek() == '#' || (peek() == '/' && peek(1) == '/')) {
        while (pos_ < src_.text.size() && peek() != '\n') bump();
        continue;
      }
      break;
    }
    Token t;
    t.line = line_;
    t.column = col_;
    if (pos_ >= src_.text.size()) {
      t.kind = Tok::kEnd;
      cur_ = t;
      return;
    }
    char c = peek();
    auto single = [&](Tok k) {
      t.kind = k;
      t.text = std::string(1, c);
      bump();
    };
    if (ident_start(c)) {
      t.kind = Tok::kIdent;
      while (pos_ < src_.text.size() && ident_char(peek())) {
        t.text += peek();
        bump();
      }
    } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '.' ||
               ((c == '-' || c == '+') &&
                (std::isdigit(static_cast<unsigned char>(peek(1))) || peek(1) == '.'))) {
      t.kind = Tok::kNumber;
      if (c == '-' || c == '+') {
        t.text += c;
        bump();
      }
      auto digits = [&] {
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
          t.text += peek();
          bump();
        }
      };
      digits();
      if (peek() == '.') {
        t.text += '.';
        bump();
        digits();
      }
      if ((peek() == 'e' || peek() == 'E') &&
          (std::isdigit(static_cast<unsigned char>(peek(1))) ||
           ((peek(1) == '-' || peek(1) == '+') && std::isdigit(static_cast<unsigned char>(peek(2)))))) {
        t.text += peek();
        bump();
        if (peek() == '-' || peek() == '+') {
          t.text += peek();
          bump();
        }
        digits();
      }
    } else if (c == '-' && peek(1) == '>') {
      t.kind = Tok::kArrow;
      t.text = "->";
      bump();
      bump();
    } else if (c == '{') {
      single(Tok::kLBrace);
    } else if (c == '}') {
      single(Tok::kRBrace);
    } else if (c == '(') {
      single(Tok::kLParen);
    } else if (c == ')') {
      single(Tok::kRParen);
    } else if (c == ',') {
      single(Tok::kComma);
    } else if (c == '=') {
      single(Tok::kEquals);
    } else {
      cur_ = t;
      fail(t, std::string("unexpected character '") + c + "'");
    }
    cur_ = t;
  }

  Token expect(Tok kind, const char* context) {
    if (cur_.kind != kind) {
      fail(cur_, std::string("expected ") + describe(kind) + " " + context + ", found " +
                     (cur_.kind == Tok::kEnd ? std::string("end of input") : "'" + cur_.text + "'"));
    }
    Token t = cur_;
    advance();
    return t;
  }

  void expect_keyword(const char* kw) {
    if (cur_.kind != Tok::kIdent || cur_.text != kw) {
      fail(cur_, std::string("expected '") + kw + "'");
    }
    advance();
  }

  bool at_keyword(const char* kw) const { return cur_.kind == Tok::kIdent && cur_.text == kw; }

  // Names of constants and range values: identifiers or unsigned integers.
  Token expect_name(const char* context) {
    if (cur_.kind == Tok::kNumber &&
        std::all_of(cur_.text.begin(), cur_.text.end(),
                    [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
      Token t = cur_;
      advance();
      return t;
    }
    return expect(Tok::kIdent, context);
  }

  std::vector<std::string> name_set(const char* what) {
    expect(Tok::kLBrace, what);
    std::vector<std::string> out;
    std::set<std::string> seen;
    for (;;) {
      auto t = expect_name(what);
      if (!seen.insert(t.text).second) fail(t, "'" + t.text + "' listed twice");
      out.push_back(t.text);
      if (cur_.kind == Tok::kComma) {
        advance();
        continue;
      }
      break;
    }
    expect(Tok::kRBrace, what);
    return out;
  }

  void parse_logvar() {
    advance();
    auto name = expect(Tok::kIdent, "after 'logvar'");
    if (model_.find_logvar(name.text)) fail(name, "duplicate declaration of logvar '" + name.text + "'");
    auto domain = name_set("in logvar domain");
    model_.logvars.push_back({name.text, std::move(domain)});
  }

  std::size_t logvar_ref(const Token& t) {
    auto lv = model_.find_logvar(t.text);
    if (!lv) fail(t, "undeclared logvar '" + t.text + "'");
    return *lv;
  }

  void parse_prv() {
    advance();
    auto name = expect(Tok::kIdent, "after 'prv'");
    if (model_.find_prv(name.text)) fail(name, "duplicate declaration of PRV '" + name.text + "'");
    if (model_.find_parfactor(name.text)) fail(name, "'" + name.text + "' is already a parfactor");
    Prv p;
    p.name = name.text;
    if (cur_.kind == Tok::kLParen) {
      advance();
      if (cur_.kind != Tok::kRParen) {
        for (;;) {
          p.params.push_back(logvar_ref(expect(Tok::kIdent, "in PRV parameters")));
          if (cur_.kind != Tok::kComma) break;
          advance();
        }
      }
      expect(Tok::kRParen, "after PRV parameters");
    }
    expect_keyword("range");
    p.range = name_set("in PRV range");
    model_.prvs.push_back(std::move(p));
  }

  Argument parse_argspec() {
    Argument arg;
    if (cur_.kind == Tok::kArrow) {
      arg.dir = EdgeDir::kChild;
      advance();
    }
    auto name = expect(Tok::kIdent, "in parfactor arguments");
    auto prv = model_.find_prv(name.text);
    if (!prv) fail(name, "undeclared PRV '" + name.text + "'");
    arg.prv = *prv;
    if (cur_.kind == Tok::kLParen) {
      advance();
      if (cur_.kind != Tok::kRParen) {
        for (;;) {
          arg.logvars.push_back(logvar_ref(expect(Tok::kIdent, "in PRV arguments")));
          if (cur_.kind != Tok::kComma) break;
          advance();
        }
      }
      expect(Tok::kRParen, "after PRV arguments");
    }
    if (arg.logvars.size() != model_.prvs[arg.prv].params.size()) {
      fail(name, "PRV '" + name.text + "' takes " + std::to_string(model_.prvs[arg.prv].params.size()) +
                     " logvar(s)");
    }
    return arg;
  }

  std::size_t constant_ref(std::size_t lv, const Token& t) {
    const auto& dom = model_.logvars[lv].domain;
    auto it = std::find(dom.begin(), dom.end(), t.text);
    if (it == dom.end()) {
      fail(t, "'" + t.text + "' is not in the domain of '" + model_.logvars[lv].name + "'");
    }
    return static_cast<std::size_t>(it - dom.begin());
  }

  // Either "(a, b)" or a bare list "a, b" for the given arity.
  template <typename F>
  std::vector<std::size_t> value_tuple(std::size_t arity, F&& resolve, const char* what) {
    std::vector<std::size_t> out;
    bool paren = cur_.kind == Tok::kLParen;
    if (paren) advance();
    for (std::size_t i = 0; i < arity; ++i) {
      if (i) expect(Tok::kComma, what);
      out.push_back(resolve(i, expect_name(what)));
    }
    if (paren) expect(Tok::kRParen, what);
    return out;
  }

  Constraint parse_constraint(const Parfactor& g) {
    Constraint c;
    bool paren = cur_.kind == Tok::kLParen;
    if (paren) advance();
    for (;;) {
      c.logvars.push_back(logvar_ref(expect(Tok::kIdent, "in constraint")));
      if (!paren || cur_.kind != Tok::kComma) break;
      advance();
    }
    if (paren) expect(Tok::kRParen, "after constraint logvars");
    auto lvs = model_.parfactor_logvars(g);
    for (auto lv : c.logvars) {
      if (std::find(lvs.begin(), lvs.end(), lv) == lvs.end()) {
        fail(cur_, "constraint logvar '" + model_.logvars[lv].name + "' does not occur in the arguments");
      }
    }
    expect_keyword("in");
    expect(Tok::kLBrace, "before constraint tuples");
    std::vector<Tuple> tuples;
    for (;;) {
      Token at = cur_;
      auto t = value_tuple(
          c.logvars.size(), [&](std::size_t i, const Token& tok) { return constant_ref(c.logvars[i], tok); },
          "in constraint tuple");
      if (std::find(tuples.begin(), tuples.end(), t) != tuples.end()) fail(at, "duplicate constraint tuple");
      tuples.push_back(std::move(t));
      if (cur_.kind != Tok::kComma) break;
      advance();
    }
    expect(Tok::kRBrace, "after constraint tuples");
    std::sort(tuples.begin(), tuples.end());
    c.tuples = std::move(tuples);
    return c;
  }

  double parse_number() {
    auto t = expect(Tok::kNumber, "as potential");
    double v = 0;
    const char* first = t.text.data();
    if (*first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, t.text.data() + t.text.size(), v);
    if (ec == std::errc::result_out_of_range) fail(t, "number out of range");
    if (ec != std::errc() || ptr != t.text.data() + t.text.size()) fail(t, "malformed number");
    return v;
  }

  void parse_parfactor() {
    advance();
    auto name = expect(Tok::kIdent, "after 'parfactor'");
    if (model_.find_parfactor(name.text)) fail(name, "duplicate declaration of parfactor '" + name.text + "'");
    if (model_.find_prv(name.text)) fail(name, "'" + name.text + "' is already a PRV");
    Parfactor g;
    g.name = name.text;
    expect(Tok::kLParen, "after parfactor name");
    for (;;) {
      g.args.push_back(parse_argspec());
      if (cur_.kind != Tok::kComma) break;
      advance();
    }
    expect(Tok::kRParen, "after parfactor arguments");
    if (at_keyword("where")) {
      advance();
      g.constraint = parse_constraint(g);
    } else {
      g.constraint.logvars = model_.parfactor_logvars(g);
    }
    const std::size_t size = model_.table_size(g);
    if (at_keyword("uniform")) {
      advance();
      g.table.assign(size, 1.0);
    } else if (at_keyword("table")) {
      advance();
      g.table.assign(size, std::numeric_limits<double>::quiet_NaN());
      std::vector<bool> seen(size, false);
      expect(Tok::kLBrace, "after 'table'");
      while (cur_.kind != Tok::kRBrace) {
        Token at = cur_;
        auto values = value_tuple(
            g.args.size(),
            [&](std::size_t i, const Token& tok) {
              const auto& range = model_.prvs[g.args[i].prv].range;
              auto it = std::find(range.begin(), range.end(), tok.text);
              if (it == range.end()) {
                fail(tok, "'" + tok.text + "' is not in the range of '" + model_.prvs[g.args[i].prv].name + "'");
              }
              return static_cast<std::size_t>(it - range.begin());
            },
            "in table row");
        expect(Tok::kEquals, "in table row");
        auto idx = table_index(model_, g, values);
        if (seen[idx]) fail(at, "duplicate table row");
        seen[idx] = true;
        g.table[idx] = parse_number();
      }
      advance();
    } else {
      fail(cur_, "expected 'uniform' or 'table'");
    }
    model_.parfactors.push_back(std::move(g));
  }

  const ModelSource& src_;
  std::vector<std::string> lines_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
  Token cur_;
  Model model_;
};

std::string join_names(const std::vector<std::string>& names) {
  std::string s;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) s += ", ";
    s += names[i];
  }
  return s;
}

}  // namespace

Model parse_model(const ModelSource& source) { return Parser(source).run(); }

Model read_model_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_model({ss.str(), path});
}

std::string format_potential(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
  return std::string(buf, ptr);
}

std::string serialize_model(const Model& m) {
  std::ostringstream os;
  for (const auto& lv : m.logvars) os << "logvar " << lv.name << " {" << join_names(lv.domain) << "}\n";
  if (!m.logvars.empty()) os << '\n';
  for (std::size_t i = 0; i < m.prvs.size(); ++i) {
    os << "prv " << m.prv_signature(i) << " range {" << join_names(m.prvs[i].range) << "}\n";
  }
  for (const auto& g : m.parfactors) {
    os << "\nparfactor " << g.name << '(';
    for (std::size_t i = 0; i < g.args.size(); ++i) {
      const auto& arg = g.args[i];
      if (i) os << ", ";
      if (arg.dir == EdgeDir::kChild) os << "->";
      os << m.prvs[arg.prv].name;
      if (!arg.logvars.empty()) {
        os << '(';
        for (std::size_t j = 0; j < arg.logvars.size(); ++j) {
          if (j) os << ", ";
          os << m.logvars[arg.logvars[j]].name;
        }
        os << ')';
      }
    }
    os << ')';
    if (g.constraint.tuples) {
      os << " where (";
      for (std::size_t j = 0; j < g.constraint.logvars.size(); ++j) {
        if (j) os << ", ";
        os << m.logvars[g.constraint.logvars[j]].name;
      }
      os << ") in {";
      auto tuples = *g.constraint.tuples;
      std::sort(tuples.begin(), tuples.end());
      for (std::size_t k = 0; k < tuples.size(); ++k) {
        if (k) os << ", ";
        os << '(';
        for (std::size_t j = 0; j < tuples[k].size(); ++j) {
          if (j) os << ", ";
          os << m.logvars[g.constraint.logvars[j]].domain[tuples[k][j]];
        }
        os << ')';
      }
      os << '}';
    }
    bool uniform = std::all_of(g.table.begin(), g.table.end(), [](double v) { return v == 1.0; });
    if (uniform) {
      os << " uniform\n";
      continue;
    }
    os << " table {\n";
    std::vector<std::size_t> values(g.args.size(), 0);
    for (std::size_t idx = 0; idx < g.table.size(); ++idx) {
      os << "  (";
      for (std::size_t j = 0; j < values.size(); ++j) {
        if (j) os << ", ";
        os << m.prvs[g.args[j].prv].range[values[j]];
      }
      os << ") = " << format_potential(g.table[idx]) << '\n';
      for (std::size_t j = values.size(); j-- > 0;) {
        if (++values[j] < m.prvs[g.args[j].prv].range.size()) break;
        values[j] = 0;
      }
    }
    os << "}\n";
  }
  return os.str();
}

namespace {

nlohmann::ordered_json choice_json(const ParentChoiceText& choice) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& e : choice) j[e.target] = e.parents;
  return j;
}

}  // namespace

std::string emit_result(const QueryResult& r) {
  nlohmann::ordered_json doc;
  doc["query"] = r.query;
  doc["kind"] = r.kind;
  doc["unique"] = r.unique;
  doc["parent_choice_count"] = r.parent_choice_count;
  doc["distributions"] = nlohmann::ordered_json::array();
  for (const auto& d : r.distributions) {
    nlohmann::ordered_json entry;
    entry["parent_choice"] = choice_json(d.parent_choice);
    entry["equivalent_parent_choices"] = nlohmann::ordered_json::array();
    for (const auto& c : d.equivalent_parent_choices) {
      entry["equivalent_parent_choices"].push_back(choice_json(c));
    }
    nlohmann::ordered_json probs = nlohmann::ordered_json::object();
    for (const auto& [label, p] : d.probabilities) probs[label] = p;
    entry["probabilities"] = std::move(probs);
    doc["distributions"].push_back(std::move(entry));
  }
  return doc.dump(2) + "\n";
}

}  // namespace liftdo
