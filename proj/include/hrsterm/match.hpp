#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hrsterm/normalize.hpp"
#include "hrsterm/rule.hpp"
#include "hrsterm/term.hpp"

namespace hrs {

namespace detail {

// Structural bound-variable renaming (uid -> replacement symbol). Safe
// without scope tracking because bound-variable uids are globally unique.
inline Term rename_bound(const Term& t,
                         const std::map<std::uint64_t, Symbol>& ren) {
  std::vector<Symbol> binders = t.binders();
  for (Symbol& b : binders) {
    auto it = ren.find(b.uid);
    if (it != ren.end()) b = it->second;
  }
  Symbol head = t.head();
  if (head.is_bound_var()) {
    auto it = ren.find(head.uid);
    if (it != ren.end()) head = it->second;
  }
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const Term& a : t.args()) args.push_back(rename_bound(a, ren));
  return Term::make(std::move(binders), std::move(head), std::move(args));
}

inline bool match_rec(const Term& pat, const Term& sub,
                      const std::set<std::string>& matchable,
                      std::set<std::uint64_t>& scope, Substitution& theta) {
  if (pat.binders().size() != sub.binders().size()) return false;
  if (!pat.binders().empty()) {
    const std::size_t m = pat.binders().size();
    std::map<std::uint64_t, Symbol> ren;
    for (std::size_t i = 0; i < m; ++i) {
      if (pat.binders()[i].type != sub.binders()[i].type) return false;
      ren[sub.binders()[i].uid] = pat.binders()[i];
      scope.insert(pat.binders()[i].uid);
    }
    const bool ok = match_rec(pat.strip_binders(m),
                              rename_bound(sub.strip_binders(m), ren),
                              matchable, scope, theta);
    for (std::size_t i = 0; i < m; ++i) scope.erase(pat.binders()[i].uid);
    return ok;
  }
  const Symbol& h = pat.head();
  if (h.is_free_var() && matchable.count(h.name)) {
    // flex: pattern invariant makes the solution unique
    std::vector<Symbol> zs;
    for (const Term& a : pat.args()) {
      auto z = eta_long_var(a);
      if (!z || !z->is_bound_var()) return false;  // non-pattern occurrence
      zs.push_back(*z);
    }
    std::map<std::uint64_t, Symbol> to_fresh;
    std::vector<Symbol> ws;
    for (const Symbol& z : zs) {
      if (to_fresh.count(z.uid)) return false;  // repeated argument
      Symbol w = fresh_bound_var(z.name, z.type);
      to_fresh[z.uid] = w;
      ws.push_back(w);
    }
    Term value = Term::wrap_binders(ws, rename_bound(sub, to_fresh));
    for (const Symbol& v : free_vars(value))
      if (v.is_bound_var() && scope.count(v.uid)) return false;  // escape
    if (value.type() != h.type) return false;
    if (auto prev = theta.lookup(h)) return alpha_eq(*prev, value);
    theta.bind(h, value);
    return true;
  }
  // rigid: subject binders on the path were renamed to the pattern's
  if (!(sub.head() == h)) return false;
  if (pat.args().size() != sub.args().size()) return false;
  for (std::size_t i = 0; i < pat.args().size(); ++i)
    if (!match_rec(pat.args()[i], sub.args()[i], matchable, scope, theta))
      return false;
  return true;
}

}  // namespace detail

// Decidable matching for higher-order patterns: returns the unique theta with
// lhs.theta-dn alpha-equal to ground, or nullopt. The subject's variables are
// rigid; only the pattern's free variables are solved for.
inline std::optional<Substitution> match_pattern(const Term& lhs,
                                                 const Term& ground) {
  std::string why;
  if (!is_pattern(lhs, &why))
    throw RuleError("unsupported rule: left-hand side is not a pattern: " + why);
  if (lhs.type() != ground.type()) return std::nullopt;
  std::set<std::string> matchable;
  for (const Symbol& v : free_vars(lhs))
    if (v.is_free_var()) matchable.insert(v.name);
  Substitution theta;
  std::set<std::uint64_t> scope;
  if (!detail::match_rec(lhs, ground, matchable, scope, theta))
    return std::nullopt;
  if (!alpha_eq(substitute(lhs, theta), ground)) return std::nullopt;
  return theta;
}

}  // namespace hrs
