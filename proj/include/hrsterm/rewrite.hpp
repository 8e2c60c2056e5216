#pragma once

#include <deque>
#include <vector>

#include "hrsterm/match.hpp"
#include "hrsterm/rule.hpp"
#include "hrsterm/term.hpp"

namespace hrs {

// Replace the subterm at position p (including its stripped-binder prefix
// when p stops between binders) by repl, reattaching the surrounding context.
inline Term replace_at(const Term& t, const Position& p, const Term& repl,
                       std::size_t i = 0) {
  if (i == p.size()) return repl;
  if (!t.binders().empty()) {
    if (p[i] != 1) throw std::out_of_range("invalid position");
    Term inner = replace_at(t.strip_binders(1), p, repl, i + 1);
    return Term::wrap_binders({t.binders().front()}, inner);
  }
  const int k = p[i];
  if (k < 1 || static_cast<std::size_t>(k) > t.args().size())
    throw std::out_of_range("invalid position");
  std::vector<Term> args = t.args();
  args[static_cast<std::size_t>(k) - 1] =
      replace_at(args[static_cast<std::size_t>(k) - 1], p, repl, i + 1);
  return Term::make(t.binders(), t.head(), std::move(args));
}

// One-step ->_R reducts at all positions, deduplicated modulo alpha,
// in canonical order. Finite because patterns match uniquely.
inline std::vector<Term> step_all(const Term& t, const RewriteSystem& R) {
  TermSet out;
  for (const Position& p : positions(t)) {
    auto view = subterm_at_opt(t, p);
    const Term& u = view->term;
    for (const Rule& rule : R.rules) {
      if (rule.lhs.type() != u.type()) continue;
      auto theta = match_pattern(rule.lhs, u);
      if (!theta) continue;
      out.insert(replace_at(t, p, substitute(rule.rhs, *theta)));
    }
  }
  return out.items();
}

// Bounded oracle for ->*_R: true iff t is reachable from s in <= depth steps.
inline bool reachable_within(const Term& s, const Term& t,
                             const RewriteSystem& R, int depth) {
  if (alpha_eq(s, t)) return true;
  TermSet seen;
  seen.insert(s);
  std::vector<Term> frontier{s};
  for (int d = 0; d < depth && !frontier.empty(); ++d) {
    std::vector<Term> next;
    for (const Term& u : frontier)
      for (const Term& v : step_all(u, R)) {
        if (alpha_eq(v, t)) return true;
        if (seen.insert(v)) next.push_back(v);
      }
    frontier = std::move(next);
  }
  return false;
}

// Transitive variant: t reachable from s in 1..depth steps.
inline bool reachable_within_plus(const Term& s, const Term& t,
                                  const RewriteSystem& R, int depth) {
  for (const Term& v : step_all(s, R))
    if (reachable_within(v, t, R, depth - 1)) return true;
  return false;
}

}  // namespace hrs
