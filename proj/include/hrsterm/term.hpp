#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hrsterm/symbol.hpp"
#include "hrsterm/type.hpp"

namespace hrs {

// Eta-long beta-normal term in spine form  \x1..xm. a(t1,..,tn).
//
// The representation enforces beta-normality structurally (a head is always
// a symbol, never an abstraction) and eta-longness at construction: the head
// is applied to exactly as many arguments as its type demands, so the body
// under the binders has basic type, recursively.
//
// Subterm extraction may strip binders, so a Term can contain occurrences of
// bound-variable symbols that are not bound inside it ("dangling"); those
// occurrences are reported by free_vars() and are rigid for alpha-equivalence.
class Term {
public:
  Term() = default;

  static Term make(std::vector<Symbol> binders, Symbol head,
                   std::vector<Term> args) {
    auto [doms, base] = head.type.decompose();
    if (doms.size() != args.size())
      throw std::logic_error("Term::make: head " + head.display() +
                             " expects " + std::to_string(doms.size()) +
                             " arguments, got " + std::to_string(args.size()));
    for (std::size_t i = 0; i < args.size(); ++i)
      if (args[i].type() != doms[i])
        throw std::logic_error("Term::make: argument " + std::to_string(i + 1) +
                               " of " + head.display() + " has type " +
                               args[i].type().str() + ", expected " +
                               doms[i].str());
    std::vector<SimpleType> binder_types;
    binder_types.reserve(binders.size());
    for (const Symbol& b : binders) {
      if (!b.is_bound_var())
        throw std::logic_error("Term::make: binder is not a bound variable");
      binder_types.push_back(b.type);
    }
    auto d = std::make_shared<Data>();
    d->binders = std::move(binders);
    d->head = std::move(head);
    d->args = std::move(args);
    d->type = SimpleType::arrows(binder_types, base);
    std::size_t sz = 1;
    for (const Term& a : d->args) sz += a.size();
    d->size = sz;
    Term t;
    t.d_ = std::move(d);
    return t;
  }

  bool empty() const { return d_ == nullptr; }
  const std::vector<Symbol>& binders() const { return d_->binders; }
  const Symbol& head() const { return d_->head; }
  const std::vector<Term>& args() const { return d_->args; }
  const SimpleType& type() const { return d_->type; }
  std::size_t size() const { return d_->size; }

  // top(t): head symbol of the spine.
  const Symbol& top() const { return d_->head; }

  // Same head and args, first k binders removed.
  Term strip_binders(std::size_t k) const {
    if (k == 0) return *this;
    std::vector<Symbol> bs(binders().begin() + static_cast<long>(k),
                           binders().end());
    return make(std::move(bs), head(), args());
  }

  // \xs. t with xs prepended to t's own binders (spine concatenation).
  static Term wrap_binders(const std::vector<Symbol>& xs, const Term& t) {
    if (xs.empty()) return t;
    std::vector<Symbol> bs = xs;
    bs.insert(bs.end(), t.binders().begin(), t.binders().end());
    return make(std::move(bs), t.head(), t.args());
  }

private:
  struct Data {
    std::vector<Symbol> binders;
    Symbol head;
    std::vector<Term> args;
    SimpleType type;
    std::size_t size = 0;
  };
  std::shared_ptr<const Data> d_;
};

// ---------------------------------------------------------------------------
// Alpha-equivalence. Binder lists are identified positionally; symbols not
// bound within the compared terms (free variables, dangling bound variables)
// must be identical.

namespace detail {

inline bool alpha_eq_rec(const Term& s, const Term& t,
                         std::map<std::uint64_t, std::uint64_t>& l2r,
                         std::map<std::uint64_t, std::uint64_t>& r2l) {
  if (s.binders().size() != t.binders().size()) return false;
  if (s.args().size() != t.args().size()) return false;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> added;
  for (std::size_t i = 0; i < s.binders().size(); ++i) {
    const Symbol& a = s.binders()[i];
    const Symbol& b = t.binders()[i];
    if (a.type != b.type) return false;
    l2r[a.uid] = b.uid;
    r2l[b.uid] = a.uid;
    added.emplace_back(a.uid, b.uid);
  }
  auto restore = [&]() {
    for (auto& [l, r] : added) {
      l2r.erase(l);
      r2l.erase(r);
    }
  };
  const Symbol& hs = s.head();
  const Symbol& ht = t.head();
  bool heads_ok;
  if (hs.is_bound_var() && ht.is_bound_var()) {
    auto it = l2r.find(hs.uid);
    if (it != l2r.end()) {
      heads_ok = it->second == ht.uid;
    } else {
      // dangling on the left: must be the identical dangling symbol
      heads_ok = r2l.find(ht.uid) == r2l.end() && hs == ht;
    }
  } else {
    heads_ok = hs == ht;
  }
  if (!heads_ok) {
    restore();
    return false;
  }
  for (std::size_t i = 0; i < s.args().size(); ++i) {
    if (!alpha_eq_rec(s.args()[i], t.args()[i], l2r, r2l)) {
      restore();
      return false;
    }
  }
  restore();
  return true;
}

}  // namespace detail

inline bool alpha_eq(const Term& s, const Term& t) {
  if (s.empty() || t.empty()) return s.empty() == t.empty();
  if (s.type() != t.type()) return false;
  std::map<std::uint64_t, std::uint64_t> l2r, r2l;
  return detail::alpha_eq_rec(s, t, l2r, r2l);
}

// ---------------------------------------------------------------------------
// Canonical rendering: de-Bruijn-style string, equal iff alpha-equivalent.
// Also the basis of the total term order (size first, then lexicographic),
// used for deduplication and for least(T) in the usable-rules oracle.

namespace detail {

inline void canon_rec(const Term& t, std::vector<std::uint64_t>& env,
                      std::string& out) {
  if (!t.binders().empty()) {
    out += "\\[";
    for (const Symbol& b : t.binders()) {
      out += b.type.str();
      out += ';';
    }
    out += ']';
  }
  for (const Symbol& b : t.binders()) env.push_back(b.uid);
  const Symbol& h = t.head();
  if (h.is_bound_var()) {
    auto it = std::find(env.rbegin(), env.rend(), h.uid);
    if (it != env.rend()) {
      out += '%';
      out += std::to_string(env.rend() - it - 1);  // de Bruijn level
    } else {
      out += '!';
      out += std::to_string(h.uid);  // dangling: rigid identity
    }
  } else if (h.is_free_var()) {
    out += '?';
    out += h.name;
  } else {
    out += h.display();
  }
  if (!t.args().empty()) {
    out += '(';
    for (std::size_t i = 0; i < t.args().size(); ++i) {
      if (i) out += ',';
      canon_rec(t.args()[i], env, out);
    }
    out += ')';
  }
  for (std::size_t i = 0; i < t.binders().size(); ++i) env.pop_back();
}

}  // namespace detail

inline std::string canonical(const Term& t) {
  std::string out;
  std::vector<std::uint64_t> env;
  detail::canon_rec(t, env, out);
  return out;
}

// Total order: size, then canonical rendering.
inline bool term_less(const Term& a, const Term& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return canonical(a) < canonical(b);
}

// Deterministic set of terms modulo alpha, iterated in canonical order.
class TermSet {
public:
  bool insert(const Term& t) {
    return members_.emplace(canonical(t), t).second;
  }
  bool contains(const Term& t) const {
    return members_.count(canonical(t)) > 0;
  }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  std::vector<Term> items() const {
    std::vector<Term> out;
    out.reserve(members_.size());
    for (const auto& [k, v] : members_) out.push_back(v);
    return out;
  }

private:
  std::map<std::string, Term> members_;
};

// ---------------------------------------------------------------------------
// Free variables: free-variable symbols plus dangling bound-variable symbols.

namespace detail {

inline void free_vars_rec(const Term& t, std::set<std::uint64_t>& bound,
                          std::vector<Symbol>& out) {
  for (const Symbol& b : t.binders()) bound.insert(b.uid);
  const Symbol& h = t.head();
  const bool head_free =
      h.is_free_var() || (h.is_bound_var() && !bound.count(h.uid));
  if (head_free &&
      std::find(out.begin(), out.end(), h) == out.end())
    out.push_back(h);
  for (const Term& a : t.args()) free_vars_rec(a, bound, out);
  for (const Symbol& b : t.binders()) bound.erase(b.uid);
}

}  // namespace detail

inline std::vector<Symbol> free_vars(const Term& t) {
  std::vector<Symbol> out;
  std::set<std::uint64_t> bound;
  detail::free_vars_rec(t, bound, out);
  return out;
}

inline bool occurs_free(const Symbol& x, const Term& t) {
  const auto fv = free_vars(t);
  return std::find(fv.begin(), fv.end(), x) != fv.end();
}

// ---------------------------------------------------------------------------
// Positions: strings over positive integers. Pos(\x.t) = {e} u 1.Pos(t)
// descends one binder at a time; Pos(a(ts)) = {e} u i.Pos(ti).

using Position = std::vector<int>;

inline std::string position_str(const Position& p) {
  if (p.empty()) return "e";
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += '.';
    s += std::to_string(p[i]);
  }
  return s;
}

inline bool position_proper_prefix(const Position& p, const Position& q) {
  return p.size() < q.size() && std::equal(p.begin(), p.end(), q.begin());
}

// Subterm together with the binders in scope above it.
struct SubtermView {
  Term term;
  std::vector<Symbol> context;
};

inline std::optional<SubtermView> subterm_at_opt(const Term& t,
                                                 const Position& p) {
  Term cur = t;
  std::vector<Symbol> ctx;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!cur.binders().empty()) {
      if (p[i] != 1) return std::nullopt;
      ctx.push_back(cur.binders().front());
      cur = cur.strip_binders(1);
    } else {
      const int k = p[i];
      if (k < 1 || static_cast<std::size_t>(k) > cur.args().size())
        return std::nullopt;
      cur = cur.args()[static_cast<std::size_t>(k) - 1];
    }
  }
  return SubtermView{cur, std::move(ctx)};
}

inline Term subterm_at(const Term& t, const Position& p) {
  auto v = subterm_at_opt(t, p);
  if (!v)
    throw std::out_of_range("invalid position " + position_str(p));
  return v->term;
}

namespace detail {

inline void positions_rec(const Term& t, Position& prefix,
                          std::vector<Position>& out) {
  out.push_back(prefix);
  if (!t.binders().empty()) {
    prefix.push_back(1);
    Term stripped = t.strip_binders(1);
    positions_rec(stripped, prefix, out);
    prefix.pop_back();
    return;
  }
  for (std::size_t i = 0; i < t.args().size(); ++i) {
    prefix.push_back(static_cast<int>(i + 1));
    positions_rec(t.args()[i], prefix, out);
    prefix.pop_back();
  }
}

}  // namespace detail

// All positions in pre-order.
inline std::vector<Position> positions(const Term& t) {
  std::vector<Position> out;
  Position prefix;
  detail::positions_rec(t, prefix, out);
  return out;
}

// ---------------------------------------------------------------------------
// Sub(t): {t} u Sub(s) for t = \x.s, {t} u U Sub(ti) for t = a(ts).
// Members may contain dangling bound variables; deduplicated modulo alpha.

namespace detail {

inline void subterms_rec(const Term& t, TermSet& out) {
  out.insert(t);
  if (!t.binders().empty()) {
    subterms_rec(t.strip_binders(1), out);
    return;
  }
  for (const Term& a : t.args()) subterms_rec(a, out);
}

}  // namespace detail

inline TermSet subterms(const Term& t) {
  TermSet out;
  detail::subterms_rec(t, out);
  return out;
}

inline bool subterm_eq(const Term& t, const Term& s) {  // t |>=_sub s
  return subterms(t).contains(s);
}

inline bool subterm_strict(const Term& t, const Term& s) {  // t |>_sub s
  return !alpha_eq(t, s) && subterm_eq(t, s);
}

// If t is the eta-long form of a variable x, i.e. \v1..vk. x(v1-dn,..,vk-dn),
// returns x.
inline std::optional<Symbol> eta_long_var(const Term& t) {
  const Symbol& h = t.head();
  if (!h.is_var()) return std::nullopt;
  if (t.args().size() != t.binders().size()) return std::nullopt;
  for (std::size_t i = 0; i < t.args().size(); ++i) {
    auto inner = eta_long_var(t.args()[i]);
    if (!inner || !(*inner == t.binders()[i])) return std::nullopt;
  }
  return h;
}

}  // namespace hrs
