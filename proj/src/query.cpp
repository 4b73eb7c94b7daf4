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

#include "liftdo/query.hpp"

#include <algorithm>
#include <cctype>
#include <optional>

#include "liftdo/grounding.hpp"

namespace liftdo {

namespace {

struct Token {
  enum Kind { kIdent, kPunct, kEnd } kind;
  std::string text;
  std::size_t offset;
};

std::vector<Token> lex(const std::string& s) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto ident_char = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'' || c == '-' || c == '.'; };
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (ident_char(c)) {
      std::size_t j = i;
      while (j < s.size() && ident_char(s[j])) ++j;
      out.push_back({Token::kIdent, s.substr(i, j - i), i});
      i = j;
    } else if (std::string_view("()|,=;{}").find(c) != std::string_view::npos) {
      out.push_back({Token::kPunct, std::string(1, c), i});
      ++i;
    } else {
      throw QueryError("unexpected character '" + std::string(1, c) + "' at offset " + std::to_string(i));
    }
  }
  out.push_back({Token::kEnd, "", s.size()});
  return out;
}

// A parsed atom reference before resolution.
struct AtomRef {
  std::size_t prv;
  std::optional<Tuple> ground;                   // all arguments constants
  std::optional<std::vector<Tuple>> restricted;  // `|{...}` after logvar args
};

class Parser {
 public:
  Parser(const Model& m, const std::string& text) : m_(m), toks_(lex(text)) {}

  const Token& peek() const { return toks_[pos_]; }
  bool at(const std::string& p) const { return peek().kind == Token::kPunct && peek().text == p; }
  bool at_end() const { return peek().kind == Token::kEnd; }

  void expect(const std::string& p) {
    if (!at(p)) fail("expected '" + p + "'");
    ++pos_;
  }
  bool accept(const std::string& p) {
    if (!at(p)) return false;
    ++pos_;
    return true;
  }
  std::string ident() {
    if (peek().kind != Token::kIdent) fail("expected a name");
    return toks_[pos_++].text;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    const auto& t = peek();
    throw QueryError(msg + " at offset " + std::to_string(t.offset) +
                     (t.kind == Token::kEnd ? " (end of input)" : " near '" + t.text + "'"));
  }

  AtomRef atom() {
    auto name = ident();
    auto prv = m_.find_prv(name);
    if (!prv) throw UnknownAtom("unknown PRV '" + name + "'");
    const auto& p = m_.prvs[*prv];
    AtomRef ref{*prv, std::nullopt, std::nullopt};
    std::vector<std::string> args;
    if (accept("(")) {
      if (!at(")")) {
        do {
          args.push_back(ident());
        } while (accept(","));
      }
      expect(")");
    }
    if (args.size() != p.params.size()) {
      throw UnknownAtom(name + " takes " + std::to_string(p.params.size()) + " argument(s)");
    }
    std::size_t constants = 0, logvars = 0;
    Tuple t;
    for (std::size_t i = 0; i < args.size(); ++i) {
      const auto& dom = m_.logvars[p.params[i]].domain;
      auto it = std::find(dom.begin(), dom.end(), args[i]);
      if (it != dom.end()) {
        ++constants;
        t.push_back(static_cast<std::size_t>(it - dom.begin()));
        continue;
      }
      auto lv = m_.find_logvar(args[i]);
      if (lv && m_.logvars[*lv].domain == dom) {
        ++logvars;
        continue;
      }
      throw UnknownAtom("'" + args[i] + "' is neither a constant nor a logvar of " + name);
    }
    if (logvars == 0) {
      ref.ground = t;
      return ref;
    }
    if (constants != 0) fail("mixing constants and logvars in one atom is not supported");
    if (at("|") && toks_[pos_ + 1].text == "{") {
      ++pos_;
      expect("{");
      std::vector<Tuple> tuples;
      if (!at("}")) {
        do {
          tuples.push_back(constant_tuple(*prv));
        } while (accept(","));
      }
      expect("}");
      ref.restricted = std::move(tuples);
    }
    return ref;
  }

  GroundAtom ground_atom() {
    auto ref = atom();
    if (!ref.ground) fail("expected a ground atom");
    return {ref.prv, *ref.ground};
  }

  std::size_t value_of(std::size_t prv) {
    auto v = ident();
    const auto& range = m_.prvs[prv].range;
    auto it = std::find(range.begin(), range.end(), v);
    if (it == range.end()) throw UnknownAtom("'" + v + "' is not in the range of " + m_.prvs[prv].name);
    return static_cast<std::size_t>(it - range.begin());
  }

  ParsedQuery query(const std::string& text) {
    ParsedQuery q;
    q.text = text;
    if (ident() != "P") fail("expected 'P('");
    expect("(");
    do {
      q.query.push_back(ground_atom());
    } while (accept(","));
    if (accept("|")) {
      if (peek().kind == Token::kIdent && peek().text == "do" && toks_[pos_ + 1].text == "(") {
        ++pos_;
        expect("(");
        q.interventional = true;
        do {
          auto ref = atom();
          expect("=");
          InterventionTarget t;
          t.target.prv = ref.prv;
          if (ref.ground) {
            t.target.groundings = std::vector<Tuple>{*ref.ground};
          } else {
            t.target.groundings = ref.restricted;
          }
          t.value = value_of(ref.prv);
          q.targets.push_back(std::move(t));
        } while (accept(","));
        expect(")");
        if (at(",")) fail("conditioning together with do() is not supported");
      } else {
        do {
          auto a = ground_atom();
          expect("=");
          q.evidence.emplace_back(a, value_of(a.prv));
        } while (accept(","));
      }
    }
    expect(")");
    if (!at_end()) fail("unexpected trailing input");
    return q;
  }

  std::vector<std::size_t> atom_list(bool lifted, const GroundModel* gm) {
    std::vector<std::size_t> out;
    if (at_end() || at(";") || at("|")) return out;
    do {
      auto ref = atom();
      if (lifted) {
        if (ref.ground && !m_.prvs[ref.prv].params.empty()) fail("lifted queries take PRVs, not ground atoms");
        if (ref.restricted) fail("lifted queries take whole PRVs");
        out.push_back(ref.prv);
      } else {
        if (!ref.ground) fail("expected a ground atom");
        out.push_back(*gm->find(GroundAtom{ref.prv, *ref.ground}));
      }
    } while (accept(","));
    return out;
  }

 private:
  Tuple constant_tuple(std::size_t prv) {
    const auto& params = m_.prvs[prv].params;
    Tuple t;
    bool paren = params.size() > 1 || at("(");
    if (paren) expect("(");
    for (std::size_t i = 0; i < params.size(); ++i) {
      if (i) expect(",");
      auto c = ident();
      const auto& dom = m_.logvars[params[i]].domain;
      auto it = std::find(dom.begin(), dom.end(), c);
      if (it == dom.end()) throw UnknownAtom("'" + c + "' is not in the domain of " + m_.logvars[params[i]].name);
      t.push_back(static_cast<std::size_t>(it - dom.begin()));
    }
    if (paren) expect(")");
    return t;
  }

  const Model& m_;
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

ParsedQuery parse_query(const Model& m, const std::string& text) { return Parser(m, text).query(text); }

SepQuery parse_sep_query(const Model& m, const std::string& text, bool lifted) {
  std::optional<GroundModel> gm;
  if (!lifted) gm = ground(m);
  Parser p(m, text);
  SepQuery q;
  q.x = p.atom_list(lifted, gm ? &*gm : nullptr);
  p.expect(";");
  q.y = p.atom_list(lifted, gm ? &*gm : nullptr);
  if (p.accept("|")) q.z = p.atom_list(lifted, gm ? &*gm : nullptr);
  if (!p.at_end()) p.fail("unexpected trailing input");
  if (q.x.empty() || q.y.empty()) throw QueryError("both sides of ';' need at least one atom");
  try {
    check_sep_query(q);
  } catch (const std::invalid_argument& e) {
    throw QueryError(e.what());
  }
  return q;
}

}  // namespace liftdo
