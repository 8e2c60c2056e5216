#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hrsterm/normalize.hpp"
#include "hrsterm/pretty.hpp"
#include "hrsterm/term.hpp"

namespace hrs {

namespace detail {

// Miller pattern: every occurrence X(t1..tn) of a free variable X has
// arguments that are eta-long forms of pairwise distinct variables bound
// above the occurrence.
inline bool pattern_rec(const Term& t, std::set<std::uint64_t>& scope,
                        std::string* why) {
  for (const Symbol& b : t.binders()) scope.insert(b.uid);
  bool ok = true;
  if (t.head().is_free_var() && !t.args().empty()) {
    std::vector<std::uint64_t> seen;
    for (const Term& a : t.args()) {
      auto v = eta_long_var(a);
      if (!v || !v->is_bound_var() || !scope.count(v->uid) ||
          std::find(seen.begin(), seen.end(), v->uid) != seen.end()) {
        if (why)
          *why = "subterm " + pretty(t) +
                 " applies a free variable to arguments that are not "
                 "distinct bound variables";
        ok = false;
        break;
      }
      seen.push_back(v->uid);
    }
  }
  if (ok)
    for (const Term& a : t.args())
      if (!pattern_rec(a, scope, why)) {
        ok = false;
        break;
      }
  for (const Symbol& b : t.binders()) scope.erase(b.uid);
  return ok;
}

}  // namespace detail

inline bool is_pattern(const Term& t, std::string* why = nullptr) {
  std::set<std::uint64_t> scope;
  return detail::pattern_rec(t, scope, why);
}

struct RuleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// l -> r with top(l) a function symbol, both sides of the same basic type,
// FV(l) containing FV(r), and l a higher-order pattern.
struct Rule {
  Term lhs;
  Term rhs;
  std::string label;

  static Rule make(Term lhs, Term rhs, std::string label) {
    if (!lhs.top().is_fun())
      throw RuleError("rule " + label + ": left-hand side must be headed by a function symbol");
    if (lhs.top().marked)
      throw RuleError("rule " + label + ": marked symbols may not occur in rules");
    if (!lhs.type().is_base())
      throw RuleError("rule " + label + ": sides must have basic type");
    if (lhs.type() != rhs.type())
      throw RuleError("rule " + label + ": sides have different types " +
                      lhs.type().str() + " and " + rhs.type().str());
    const auto fvl = free_vars(lhs);
    for (const Symbol& x : free_vars(rhs))
      if (std::find(fvl.begin(), fvl.end(), x) == fvl.end())
        throw RuleError("rule " + label + ": variable " + x.display() +
                        " occurs only in the right-hand side");
    return Rule{std::move(lhs), std::move(rhs), std::move(label)};
  }

  bool lhs_is_pattern(std::string* why = nullptr) const {
    return is_pattern(lhs, why);
  }
};

struct RewriteSystem {
  std::vector<Rule> rules;
  std::vector<Symbol> signature;       // declared function symbols, in order
  std::vector<Symbol> variables;       // declared free variables, in order
  std::vector<std::string> base_types; // declared basic types, in order

  const Rule* find_rule(const std::string& label) const {
    for (const Rule& r : rules)
      if (r.label == label) return &r;
    return nullptr;
  }
};

// D_R: top symbols of left-hand sides.
inline std::vector<Symbol> defined_symbols(const RewriteSystem& R) {
  std::vector<Symbol> out;
  for (const Rule& r : R.rules) {
    const Symbol& f = r.lhs.top();
    if (std::find(out.begin(), out.end(), f) == out.end()) out.push_back(f);
  }
  return out;
}

inline bool is_defined(const Symbol& f, const RewriteSystem& R) {
  if (!f.is_fun() || f.marked) return false;
  for (const Rule& r : R.rules)
    if (r.lhs.top() == f) return true;
  return false;
}

}  // namespace hrs
