#pragma once

#include <cctype>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hrsterm/normalize.hpp"
#include "hrsterm/rule.hpp"

namespace hrs {

// Problem files are line-oriented:
//
//   type N;
//   fun add : N -> N -> N;
//   var X : N;
//   rule lbl : add(0, Y) -> Y;
//   # comment to end of line
//
// Terms: f(t1, ..., tn), abstraction \x y. body (binder types inferred from
// the argument position), variable application F(x, y). Arrows in type
// expressions are right-associative.

struct ParseError : std::runtime_error {
  int line, col;
  ParseError(int line_, int col_, const std::string& msg)
      : std::runtime_error(std::to_string(line_) + ":" + std::to_string(col_) +
                           ": " + msg),
        line(line_),
        col(col_) {}
};

namespace detail {

struct Token {
  enum Kind { Ident, LPar, RPar, Comma, Colon, Semi, Arrow, Lambda, Dot, End };
  Kind kind;
  std::string text;
  int line, col;
};

inline std::vector<Token> lex(const std::string& src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto bump = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (src[i + k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    i += n;
  };
  while (i < src.size()) {
    const char c = src[i];
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') bump(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      bump(1);
      continue;
    }
    const int tl = line, tc = col;
    if (c == '-' && i + 1 < src.size() && src[i + 1] == '>') {
      out.push_back({Token::Arrow, "->", tl, tc});
      bump(2);
      continue;
    }
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'') {
      std::size_t j = i;
      while (j < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[j])) ||
              src[j] == '_' || src[j] == '\''))
        ++j;
      out.push_back({Token::Ident, src.substr(i, j - i), tl, tc});
      bump(j - i);
      continue;
    }
    Token::Kind k;
    switch (c) {
      case '(': k = Token::LPar; break;
      case ')': k = Token::RPar; break;
      case ',': k = Token::Comma; break;
      case ':': k = Token::Colon; break;
      case ';': k = Token::Semi; break;
      case '\\': k = Token::Lambda; break;
      case '.': k = Token::Dot; break;
      default:
        throw ParseError(tl, tc, std::string("unexpected character '") + c + "'");
    }
    out.push_back({k, std::string(1, c), tl, tc});
    bump(1);
  }
  out.push_back({Token::End, "", line, col});
  return out;
}

// Untyped surface term.
struct Ast {
  std::string name;                       // head or empty for abstraction
  std::vector<std::string> lam_names;     // nonempty for abstraction
  std::vector<std::shared_ptr<Ast>> args; // application arguments
  std::shared_ptr<Ast> body;              // abstraction body
  int line = 0, col = 0;
};

class Parser {
public:
  explicit Parser(const std::string& src) : toks_(lex(src)) {}

  RewriteSystem parse_problem() {
    RewriteSystem R;
    while (peek().kind != Token::End) {
      const Token kw = expect(Token::Ident, "declaration keyword");
      if (kw.text == "type") {
        const Token n = expect(Token::Ident, "type name");
        declare_type(R, n);
        expect(Token::Semi, "';'");
      } else if (kw.text == "fun" || kw.text == "var") {
        const Token n = expect(Token::Ident, "name");
        expect(Token::Colon, "':'");
        SimpleType ty = parse_type(R);
        expect(Token::Semi, "';'");
        declare_symbol(R, n, ty, kw.text == "fun");
      } else if (kw.text == "rule") {
        const Token lbl = expect(Token::Ident, "rule label");
        expect(Token::Colon, "':'");
        auto lhs_ast = parse_term_ast();
        expect(Token::Arrow, "'->'");
        auto rhs_ast = parse_term_ast();
        expect(Token::Semi, "';'");
        add_rule(R, lbl, *lhs_ast, *rhs_ast);
      } else {
        throw ParseError(kw.line, kw.col,
                         "expected 'type', 'fun', 'var' or 'rule', got '" +
                             kw.text + "'");
      }
    }
    return R;
  }

  SimpleType parse_type_in(const RewriteSystem& R) { return parse_type(R); }

  // Parses one term against an existing system's declarations (test and
  // tooling surface).
  Term parse_term_in(const RewriteSystem& R,
                     std::optional<SimpleType> expected = std::nullopt) {
    auto ast = parse_term_ast();
    std::map<std::string, Symbol> scope;
    Preterm p = elaborate(R, *ast, expected, scope);
    Term t = normalize(p);
    if (expected && t.type() != *expected)
      throw ParseError(ast->line, ast->col,
                       "term has type " + t.type().str() + ", expected " +
                           expected->str());
    return t;
  }

private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;

  const Token& peek(std::size_t k = 0) const {
    return toks_[std::min(pos_ + k, toks_.size() - 1)];
  }
  Token advance() { return toks_[pos_ == toks_.size() - 1 ? pos_ : pos_++]; }
  Token expect(Token::Kind k, const std::string& what) {
    if (peek().kind != k)
      throw ParseError(peek().line, peek().col,
                       "expected " + what + ", got '" + peek().text + "'");
    return advance();
  }

  void declare_type(RewriteSystem& R, const Token& n) {
    for (const auto& b : R.base_types)
      if (b == n.text)
        throw ParseError(n.line, n.col, "type " + n.text + " declared twice");
    R.base_types.push_back(n.text);
  }

  void declare_symbol(RewriteSystem& R, const Token& n, SimpleType ty,
                      bool is_fun) {
    for (const Symbol& s : R.signature)
      if (s.name == n.text)
        throw ParseError(n.line, n.col, "symbol " + n.text + " declared twice");
    for (const Symbol& s : R.variables)
      if (s.name == n.text)
        throw ParseError(n.line, n.col, "variable " + n.text + " declared twice");
    if (is_fun)
      R.signature.push_back(make_fun(n.text, std::move(ty)));
    else
      R.variables.push_back(make_free_var(n.text, std::move(ty)));
  }

  SimpleType parse_type(const RewriteSystem& R) {
    SimpleType lhs = parse_type_atom(R);
    if (peek().kind == Token::Arrow) {
      advance();
      return SimpleType::arrow(std::move(lhs), parse_type(R));
    }
    return lhs;
  }

  SimpleType parse_type_atom(const RewriteSystem& R) {
    if (peek().kind == Token::LPar) {
      advance();
      SimpleType t = parse_type(R);
      expect(Token::RPar, "')'");
      return t;
    }
    const Token n = expect(Token::Ident, "type name");
    for (const auto& b : R.base_types)
      if (b == n.text) return SimpleType::base(n.text);
    throw ParseError(n.line, n.col, "unknown type " + n.text);
  }

  std::shared_ptr<Ast> parse_term_ast() {
    auto node = std::make_shared<Ast>();
    node->line = peek().line;
    node->col = peek().col;
    if (peek().kind == Token::Lambda) {
      advance();
      while (peek().kind == Token::Ident) node->lam_names.push_back(advance().text);
      if (node->lam_names.empty())
        throw ParseError(peek().line, peek().col, "expected binder names after '\\'");
      expect(Token::Dot, "'.'");
      node->body = parse_term_ast();
      return node;
    }
    const Token h = expect(Token::Ident, "term");
    node->name = h.text;
    if (peek().kind == Token::LPar) {
      advance();
      if (peek().kind != Token::RPar) {
        node->args.push_back(parse_term_ast());
        while (peek().kind == Token::Comma) {
          advance();
          node->args.push_back(parse_term_ast());
        }
      }
      expect(Token::RPar, "')'");
    }
    return node;
  }

  Symbol resolve(const RewriteSystem& R, const Ast& a,
                 const std::map<std::string, Symbol>& scope) const {
    auto it = scope.find(a.name);
    if (it != scope.end()) return it->second;
    for (const Symbol& v : R.variables)
      if (v.name == a.name) return v;
    for (const Symbol& f : R.signature)
      if (f.name == a.name) return f;
    throw ParseError(a.line, a.col, "unknown identifier " + a.name);
  }

  Preterm elaborate(const RewriteSystem& R, const Ast& a,
                    std::optional<SimpleType> expected,
                    std::map<std::string, Symbol>& scope) {
    if (!a.lam_names.empty()) {
      if (!expected)
        throw ParseError(a.line, a.col,
                         "cannot infer binder types for this abstraction");
      std::vector<Symbol> binders;
      SimpleType rest = *expected;
      for (const std::string& n : a.lam_names) {
        if (!rest.is_arrow())
          throw ParseError(a.line, a.col,
                           "abstraction has more binders than the expected type " +
                               expected->str() + " allows");
        binders.push_back(fresh_bound_var(n, rest.domain()));
        rest = rest.codomain();
      }
      std::vector<std::pair<std::string, std::optional<Symbol>>> saved;
      for (const Symbol& b : binders) {
        auto it = scope.find(b.name);
        saved.emplace_back(b.name, it == scope.end()
                                        ? std::nullopt
                                        : std::optional<Symbol>(it->second));
        scope[b.name] = b;
      }
      Preterm body = elaborate(R, *a.body, rest, scope);
      for (auto it = saved.rbegin(); it != saved.rend(); ++it) {
        if (it->second)
          scope[it->first] = *it->second;
        else
          scope.erase(it->first);
      }
      for (auto bit = binders.rbegin(); bit != binders.rend(); ++bit)
        body = Preterm::abs(*bit, body);
      return body;
    }
    const Symbol head = resolve(R, a, scope);
    auto [doms, base] = head.type.decompose();
    if (a.args.size() > doms.size())
      throw ParseError(a.line, a.col,
                       a.name + " of type " + head.type.str() + " applied to " +
                           std::to_string(a.args.size()) + " arguments");
    Preterm p = Preterm::atom(head);
    for (std::size_t i = 0; i < a.args.size(); ++i)
      p = Preterm::app(p, elaborate(R, *a.args[i], doms[i], scope));
    return p;
  }

  void add_rule(RewriteSystem& R, const Token& lbl, const Ast& lhs_ast,
                const Ast& rhs_ast) {
    if (R.find_rule(lbl.text))
      throw ParseError(lbl.line, lbl.col, "rule label " + lbl.text + " reused");
    std::map<std::string, Symbol> scope;
    Term lhs, rhs;
    try {
      lhs = normalize(elaborate(R, lhs_ast, std::nullopt, scope));
      rhs = normalize(elaborate(R, rhs_ast, lhs.type(), scope));
    } catch (const TypeError& e) {
      throw ParseError(lbl.line, lbl.col,
                       "rule " + lbl.text + ": " + e.what());
    }
    try {
      R.rules.push_back(Rule::make(std::move(lhs), std::move(rhs), lbl.text));
    } catch (const RuleError& e) {
      throw ParseError(lbl.line, lbl.col, e.what());
    }
  }
};

}  // namespace detail

inline RewriteSystem parse_problem(const std::string& text) {
  return detail::Parser(text).parse_problem();
}

// Parse a single term against R's declarations; used by tests and tools.
// Abstractions at the top level need an expected type for binder inference.
inline Term parse_term(const std::string& text, const RewriteSystem& R,
                       std::optional<SimpleType> expected = std::nullopt) {
  return detail::Parser(text).parse_term_in(R, std::move(expected));
}

inline SimpleType parse_type(const std::string& text, const RewriteSystem& R) {
  return detail::Parser(text).parse_type_in(R);
}

}  // namespace hrs
