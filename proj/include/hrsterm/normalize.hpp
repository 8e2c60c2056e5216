#pragma once

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "hrsterm/term.hpp"

namespace hrs {

// Preterms: the raw lambda tree (atom / application / abstraction) without
// the eta-long or beta-normal invariants. Needed both as the normalization
// input and because the accessibility closure produces beta-normal preterms
// that are not necessarily eta-long.
class Preterm {
public:
  static Preterm atom(Symbol s) {
    return Preterm(std::make_shared<const Node>(Node{std::move(s), {}, {}, {}}));
  }
  static Preterm app(Preterm fn, Preterm arg) {
    return Preterm(std::make_shared<const Node>(
        Node{{}, std::move(fn.n_), std::move(arg.n_), {}}));
  }
  static Preterm abs(Symbol binder, Preterm body) {
    return Preterm(std::make_shared<const Node>(
        Node{std::move(binder), {}, {}, std::move(body.n_)}));
  }

  bool is_atom() const { return !n_->fn && !n_->body; }
  bool is_app() const { return n_->fn != nullptr; }
  bool is_abs() const { return n_->body != nullptr; }

  const Symbol& atom_sym() const { return n_->sym; }
  Preterm fn() const { return Preterm(n_->fn); }
  Preterm arg() const { return Preterm(n_->arg); }
  const Symbol& binder() const { return n_->sym; }
  Preterm body() const { return Preterm(n_->body); }

private:
  struct Node {
    Symbol sym;  // atom symbol or abstraction binder
    std::shared_ptr<const Node> fn, arg;  // application
    std::shared_ptr<const Node> body;     // abstraction
  };
  explicit Preterm(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
  std::shared_ptr<const Node> n_;
};

struct TypeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Type of a preterm under the simply-typed rules; bound occurrences take the
// binder's declared type.
inline SimpleType preterm_type(const Preterm& p) {
  if (p.is_atom()) return p.atom_sym().type;
  if (p.is_abs())
    return SimpleType::arrow(p.binder().type, preterm_type(p.body()));
  const SimpleType ft = preterm_type(p.fn());
  if (!ft.is_arrow())
    throw TypeError("application of a term of basic type " + ft.str());
  const SimpleType at = preterm_type(p.arg());
  if (ft.domain() != at)
    throw TypeError("argument type " + at.str() + " does not match " +
                    ft.domain().str());
  return ft.codomain();
}

namespace detail {

inline void preterm_syms(const Preterm& p, std::vector<Symbol>& out) {
  if (p.is_atom()) {
    out.push_back(p.atom_sym());
  } else if (p.is_app()) {
    preterm_syms(p.fn(), out);
    preterm_syms(p.arg(), out);
  } else {
    preterm_syms(p.body(), out);
  }
}

// Capture-avoiding simultaneous substitution on preterms. Binders in p never
// occur in the range when everything comes from the fresh supply, but
// abstractions are renamed whenever a clash shows up anyway.
inline Preterm subst_pre(const Preterm& p,
                         const std::map<Symbol, Preterm>& env) {
  if (p.is_atom()) {
    auto it = env.find(p.atom_sym());
    return it == env.end() ? p : it->second;
  }
  if (p.is_app()) return Preterm::app(subst_pre(p.fn(), env), subst_pre(p.arg(), env));
  const Symbol& b = p.binder();
  bool clash = env.count(b) > 0;
  if (!clash) {
    std::vector<Symbol> range_syms;
    for (const auto& [k, v] : env) {
      (void)k;
      preterm_syms(v, range_syms);
    }
    clash = std::find(range_syms.begin(), range_syms.end(), b) !=
            range_syms.end();
  }
  if (!clash) return Preterm::abs(b, subst_pre(p.body(), env));
  Symbol fresh = fresh_bound_var(b.name, b.type);
  auto env2 = env;
  env2.insert_or_assign(b, Preterm::atom(fresh));
  return Preterm::abs(fresh, subst_pre(p.body(), env2));
}

inline Preterm beta_normalize(const Preterm& p) {
  if (p.is_atom()) return p;
  if (p.is_abs()) return Preterm::abs(p.binder(), beta_normalize(p.body()));
  Preterm f = beta_normalize(p.fn());
  Preterm a = beta_normalize(p.arg());
  if (f.is_abs()) {
    std::map<Symbol, Preterm> env;
    env.emplace(f.binder(), a);
    return beta_normalize(subst_pre(f.body(), env));
  }
  return Preterm::app(std::move(f), std::move(a));
}

// Beta-normal preterm -> eta-long spine Term. Freshens all binders, keeping
// display-name hints.
inline Term eta_long(const Preterm& p, std::map<Symbol, Symbol>& ren) {
  // strip abstractions
  std::vector<Symbol> binders;
  Preterm cur = p;
  while (cur.is_abs()) {
    Symbol fresh = fresh_bound_var(cur.binder().name, cur.binder().type);
    ren[cur.binder()] = fresh;
    binders.push_back(fresh);
    cur = cur.body();
  }
  // spine of the core
  std::vector<Preterm> spine_args;
  while (cur.is_app()) {
    spine_args.push_back(cur.arg());
    cur = cur.fn();
  }
  std::reverse(spine_args.begin(), spine_args.end());
  if (!cur.is_atom())
    throw std::logic_error("eta_long: beta-normal core is not atom-headed");
  Symbol head = cur.atom_sym();
  if (head.is_bound_var()) {
    auto it = ren.find(head);
    if (it != ren.end()) head = it->second;
  }
  const auto [doms, base] = head.type.decompose();
  if (spine_args.size() > doms.size())
    throw TypeError("head " + head.display() + " applied to too many arguments");
  std::vector<Term> args;
  args.reserve(doms.size());
  for (const Preterm& q : spine_args) args.push_back(eta_long(q, ren));
  // eta-expansion: missing arguments become fresh binders
  for (std::size_t i = spine_args.size(); i < doms.size(); ++i) {
    Symbol y = fresh_bound_var("x", doms[i]);
    binders.push_back(y);
    std::map<Symbol, Symbol> sub_ren;  // y may be functional; expand recursively
    args.push_back(eta_long(Preterm::atom(y), sub_ren));
  }
  return Term::make(std::move(binders), std::move(head), std::move(args));
}

}  // namespace detail

// t-down: the eta-long beta-normal form of a well-typed preterm.
inline Term normalize(const Preterm& p) {
  preterm_type(p);  // type check first; throws TypeError on failure
  std::map<Symbol, Symbol> ren;
  return detail::eta_long(detail::beta_normalize(p), ren);
}

// Term -> preterm embedding (loses no information).
inline Preterm embed(const Term& t) {
  Preterm core = Preterm::atom(t.head());
  for (const Term& a : t.args()) core = Preterm::app(core, embed(a));
  for (auto it = t.binders().rbegin(); it != t.binders().rend(); ++it)
    core = Preterm::abs(*it, core);
  return core;
}

// The eta-long form of a bare variable, e.g. F : N->N->N gives \x y.F(x,y).
inline Term eta_expand_symbol(const Symbol& s) {
  return normalize(Preterm::atom(s));
}

// ---------------------------------------------------------------------------
// Substitution: finite type-preserving map from free variables to Terms.
// Identity bindings are dropped at insertion.

class Substitution {
public:
  void bind(const Symbol& x, const Term& t) {
    if (!x.is_var())
      throw std::logic_error("substitution domain must be variables");
    if (t.type() != x.type)
      throw TypeError("binding for " + x.display() + " has type " +
                      t.type().str() + ", expected " + x.type.str());
    // dom(theta) excludes identity bindings; the identity at functional type
    // is the eta-long form \xs. x(xs)
    if (auto v = eta_long_var(t); v && *v == x) return;
    map_[x] = t;
  }

  std::optional<Term> lookup(const Symbol& x) const {
    auto it = map_.find(x);
    if (it == map_.end()) return std::nullopt;
    return it->second;
  }

  const std::map<Symbol, Term>& entries() const { return map_; }
  bool empty() const { return map_.empty(); }
  std::size_t size() const { return map_.size(); }

  using const_iterator = std::map<Symbol, Term>::const_iterator;
  const_iterator begin() const { return map_.begin(); }
  const_iterator end() const { return map_.end(); }

private:
  std::map<Symbol, Term> map_;
};

// t.theta-down: simultaneous capture-avoiding substitution followed by
// renormalization. Type-preserving.
inline Term substitute(const Term& t, const Substitution& theta) {
  if (theta.empty()) return t;
  std::map<Symbol, Preterm> env;
  for (const auto& [x, u] : theta) env.emplace(x, embed(u));
  const Preterm p = detail::subst_pre(embed(t), env);
  return normalize(p);
}

}  // namespace hrs
