#pragma once

#include <deque>
#include <map>
#include <string>
#include <vector>

#include "hrsterm/normalize.hpp"
#include "hrsterm/pretty.hpp"
#include "hrsterm/rule.hpp"
#include "hrsterm/term.hpp"

namespace hrs {

// ---------------------------------------------------------------------------
// Stable subterms: SSub(t) = SSub_X(t) with X = FV(t);
//   SSub_X(t) = {t} u SSub'_X(t)
//   SSub'_X(\x.s) = SSub_X(s)
//   SSub'_X(a(ts)) = U SSub_X(ti) if a not in X
//   SSub'_X(t) = {} otherwise.
// Descent is blocked exactly at subterms headed by an original free variable.

namespace detail {

inline void ssub_rec(const Term& t, const std::vector<Symbol>& X, TermSet& out) {
  out.insert(t);
  if (!t.binders().empty()) {
    ssub_rec(t.strip_binders(1), X, out);
    return;
  }
  if (std::find(X.begin(), X.end(), t.head()) != X.end()) return;
  for (const Term& a : t.args()) ssub_rec(a, X, out);
}

}  // namespace detail

inline TermSet stable_subterms(const Term& t) {
  TermSet out;
  detail::ssub_rec(t, free_vars(t), out);
  return out;
}

// ---------------------------------------------------------------------------
// Accessibility. Members of Acc(l') are beta-normal preterms, not
// necessarily eta-long: a spine whose top node may miss binders or trailing
// arguments, while the arguments themselves stay eta-long Terms.

struct PartialTerm {
  std::vector<Symbol> binders;
  Symbol head;
  std::vector<Term> args;

  static PartialTerm from_term(const Term& t) {
    return PartialTerm{t.binders(), t.head(), t.args()};
  }

  Preterm to_preterm() const {
    Preterm core = Preterm::atom(head);
    for (const Term& a : args) core = Preterm::app(core, embed(a));
    for (auto it = binders.rbegin(); it != binders.rend(); ++it)
      core = Preterm::abs(*it, core);
    return core;
  }

  SimpleType type() const { return preterm_type(to_preterm()); }

  std::vector<Symbol> fv() const {
    std::vector<Symbol> out;
    std::set<std::uint64_t> bound;
    for (const Symbol& b : binders) bound.insert(b.uid);
    if (head.is_free_var() || (head.is_bound_var() && !bound.count(head.uid)))
      out.push_back(head);
    for (const Term& a : args)
      for (const Symbol& v : free_vars(a))
        if ((v.is_free_var() || !bound.count(v.uid)) &&
            std::find(out.begin(), out.end(), v) == out.end())
          out.push_back(v);
    return out;
  }

  std::string canonical_key() const {
    std::string out;
    std::vector<std::uint64_t> env;
    if (!binders.empty()) {
      out += "\\[";
      for (const Symbol& b : binders) {
        out += b.type.str();
        out += ';';
      }
      out += ']';
    }
    for (const Symbol& b : binders) env.push_back(b.uid);
    if (head.is_bound_var()) {
      auto it = std::find(env.rbegin(), env.rend(), head.uid);
      if (it != env.rend())
        out += '%' + std::to_string(env.rend() - it - 1);
      else
        out += '!' + std::to_string(head.uid);
    } else if (head.is_free_var()) {
      out += '?' + head.name;
    } else {
      out += head.display();
    }
    out += '(';
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (i) out += ',';
      hrs::detail::canon_rec(args[i], env, out);
    }
    out += ")@" + std::to_string(args.size());
    return out;
  }
};

enum class SafeMode { Improved, Legacy };

// Acc(l'): least set closed under the six accessibility cases, computed by
// forward saturation with each case read as a destructor. Legacy mode keeps
// only cases 0 and 1.
struct AccessibleSet {
  Term origin;
  std::vector<PartialTerm> members;  // canonical order

  bool contains(const PartialTerm& p) const {
    const std::string k = p.canonical_key();
    for (const PartialTerm& m : members)
      if (m.canonical_key() == k) return true;
    return false;
  }
};

inline AccessibleSet accessible_set(const Term& l_prime,
                                    SafeMode mode = SafeMode::Improved) {
  const std::vector<Symbol> fv_lp = free_vars(l_prime);
  auto in_fv_lp = [&](const Symbol& s) {
    return std::find(fv_lp.begin(), fv_lp.end(), s) != fv_lp.end();
  };

  std::map<std::string, PartialTerm> acc;
  std::deque<PartialTerm> work;
  auto add = [&](PartialTerm p) {
    auto [it, fresh] = acc.emplace(p.canonical_key(), std::move(p));
    if (fresh) work.push_back(it->second);
  };

  // case 0: l' itself
  add(PartialTerm::from_term(l_prime));
  // case 1: base-typed stable subterms with no extra variables
  for (const Term& u : stable_subterms(l_prime).items()) {
    if (!u.type().is_base()) continue;
    bool fv_ok = true;
    for (const Symbol& v : free_vars(u))
      if (!in_fv_lp(v)) {
        fv_ok = false;
        break;
      }
    if (fv_ok) add(PartialTerm::from_term(u));
  }

  if (mode == SafeMode::Improved) {
    while (!work.empty()) {
      const PartialTerm u = work.front();
      work.pop_front();
      if (!u.binders.empty()) {
        // case 2: \x.t in Acc and x not in FV(l') gives t
        const Symbol& x = u.binders.front();
        if (!in_fv_lp(x)) {
          PartialTerm t = u;
          t.binders.erase(t.binders.begin());
          add(std::move(t));
        }
        continue;
      }
      // case 3: t(x-dn) in Acc with x fresh for t and l' gives t
      if (!u.args.empty()) {
        if (auto x = eta_long_var(u.args.back());
            x && x->is_var() && !in_fv_lp(*x)) {
          PartialTerm t = u;
          t.args.pop_back();
          bool fresh_for_t = !(t.head == *x);
          if (fresh_for_t)
            for (const Term& a : t.args)
              if (occurs_free(*x, a)) {
                fresh_for_t = false;
                break;
              }
          if (fresh_for_t) add(std::move(t));
        }
      }
      if (u.head.is_fun()) {
        // case 4: f(ts) in Acc, ti = \xs.t, t of basic type, xs fresh for t
        for (const Term& a : u.args) {
          const Term body = a.strip_binders(a.binders().size());
          if (!body.type().is_base()) continue;
          bool ok = true;
          for (const Symbol& b : a.binders())
            if (occurs_free(b, body)) {
              ok = false;
              break;
            }
          if (ok) add(PartialTerm::from_term(body));
        }
      } else if (!u.args.empty()) {
        // case 5: x(ts) in Acc with head x fresh for the ts and l' gives ti
        bool ok = !in_fv_lp(u.head);
        if (ok)
          for (const Term& a : u.args)
            if (occurs_free(u.head, a)) {
              ok = false;
              break;
            }
        if (ok)
          for (const Term& a : u.args) add(PartialTerm::from_term(a));
      }
    }
  }

  AccessibleSet out;
  out.origin = l_prime;
  for (auto& [k, v] : acc) out.members.push_back(std::move(v));
  return out;
}

// safe(l) = U over l' in args(l) of { t-dn | t in Acc(l'), FV(t) <= FV(l') }.
inline TermSet safe_subterms(const Term& l, SafeMode mode = SafeMode::Improved) {
  TermSet out;
  for (const Term& lp : l.args()) {
    const std::vector<Symbol> fv_lp = free_vars(lp);
    const AccessibleSet acc = accessible_set(lp, mode);
    for (const PartialTerm& m : acc.members) {
      bool ok = true;
      for (const Symbol& v : m.fv())
        if (std::find(fv_lp.begin(), fv_lp.end(), v) == fv_lp.end()) {
          ok = false;
          break;
        }
      if (ok) out.insert(normalize(m.to_preterm()));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Plain function-passing: every application of a free variable in a rule's
// right-hand side must have some prefix application in safe(l).

struct PfpViolation {
  std::string rule;
  std::string subterm;  // pretty-printed offending Z(rs)
};

struct PfpReport {
  bool ok = true;
  SafeMode mode = SafeMode::Improved;
  std::vector<PfpViolation> violations;
};

inline bool prefix_in_safe(const Symbol& z, const std::vector<Term>& args,
                           const TermSet& safe) {
  for (std::size_t k = 0; k <= args.size(); ++k) {
    PartialTerm prefix{{}, z, std::vector<Term>(args.begin(),
                                                args.begin() + static_cast<long>(k))};
    if (safe.contains(normalize(prefix.to_preterm()))) return true;
  }
  return false;
}

inline PfpReport is_pfp(const RewriteSystem& R,
                        SafeMode mode = SafeMode::Improved) {
  PfpReport report;
  report.mode = mode;
  for (const Rule& rule : R.rules) {
    const TermSet safe = safe_subterms(rule.lhs, mode);
    for (const Term& u : subterms(rule.rhs).items()) {
      if (!u.binders().empty()) continue;       // covered via the body
      if (!u.head().is_free_var()) continue;    // Z must be free in r
      if (!prefix_in_safe(u.head(), u.args(), safe)) {
        report.ok = false;
        report.violations.push_back({rule.label, pretty(u)});
      }
    }
  }
  return report;
}

}  // namespace hrs
