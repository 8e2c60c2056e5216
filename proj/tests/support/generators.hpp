#pragma once

#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hrsterm/normalize.hpp"
#include "hrsterm/parser.hpp"
#include "hrsterm/rule.hpp"
#include "hrsterm/term.hpp"

namespace hrs::testing {

// Deterministic generator of random eta-long terms over a system's
// signature and declared variables. Every basic type used must have a
// nullary symbol so that generation can bottom out.
class TermGen {
public:
  TermGen(const RewriteSystem& R, std::uint32_t seed) : R_(R), rng_(seed) {}

  std::mt19937& rng() { return rng_; }

  Term term(const SimpleType& type, int depth) {
    std::vector<Symbol> scope;
    return gen(type, depth, scope);
  }

  // Random term of a random declared basic type.
  Term base_term(int depth) {
    const std::string& b = R_.base_types[pick(R_.base_types.size())];
    return term(SimpleType::base(b), depth);
  }

  // Binds every free variable of t to a random term of matching type.
  Substitution subst_for(const Term& t, int depth) {
    Substitution theta;
    for (const Symbol& v : free_vars(t))
      theta.bind(v, term(v.type, depth));
    return theta;
  }

private:
  const RewriteSystem& R_;
  std::mt19937 rng_;

  std::size_t pick(std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_);
  }

  Term gen(const SimpleType& type, int depth, std::vector<Symbol>& scope) {
    auto [doms, base] = type.decompose();
    std::vector<Symbol> binders;
    const std::size_t scope_mark = scope.size();
    for (const SimpleType& d : doms) {
      Symbol b = fresh_bound_var("v", d);
      binders.push_back(b);
      scope.push_back(b);
    }
    // head candidates with codomain base
    std::vector<Symbol> small, any;
    auto consider = [&](const Symbol& s) {
      auto [sd, sb] = s.type.decompose();
      if (!(sb == base)) return;
      any.push_back(s);
      if (sd.empty()) small.push_back(s);
    };
    for (const Symbol& s : scope) consider(s);
    for (const Symbol& s : R_.variables) consider(s);
    for (const Symbol& s : R_.signature) consider(s);
    const std::vector<Symbol>& pool =
        (depth <= 0 && !small.empty()) ? small : any;
    if (pool.empty())
      throw std::logic_error("TermGen: no head for base type " + base.str());
    const Symbol head = pool[pick(pool.size())];
    auto [hd, hb] = head.type.decompose();
    std::vector<Term> args;
    for (const SimpleType& at : hd) args.push_back(gen(at, depth - 1, scope));
    scope.resize(scope_mark);
    return Term::make(std::move(binders), head, std::move(args));
  }
};

// Strips all leading binders; the result may contain them dangling.
inline Term strip_all_binders(const Term& t) {
  return t.strip_binders(t.binders().size());
}

// Alpha-equivalence up to a bijective renaming of free variables and
// dangling bound variables ("up to variable renaming" in comparisons with
// worked examples).
namespace detail {

struct VarBij {
  std::map<std::string, std::string> l2r, r2l;
  static std::string key(const Symbol& s) {
    return s.name + "/" + std::to_string(s.uid) + "/" + s.type.str() + "/" +
           (s.is_free_var() ? "f" : "b");
  }
  bool admit(const Symbol& a, const Symbol& b) {
    if (a.kind != b.kind || a.type != b.type) return false;
    const std::string ka = key(a), kb = key(b);
    auto it = l2r.find(ka);
    auto jt = r2l.find(kb);
    if (it == l2r.end() && jt == r2l.end()) {
      l2r[ka] = kb;
      r2l[kb] = ka;
      return true;
    }
    return it != l2r.end() && it->second == kb && jt != r2l.end() &&
           jt->second == ka;
  }
};

inline bool eq_mod_vars_rec(const Term& s, const Term& t,
                            std::map<std::uint64_t, std::uint64_t>& bound,
                            VarBij& bij) {
  if (s.binders().size() != t.binders().size()) return false;
  if (s.args().size() != t.args().size()) return false;
  for (std::size_t i = 0; i < s.binders().size(); ++i) {
    if (s.binders()[i].type != t.binders()[i].type) return false;
    bound[s.binders()[i].uid] = t.binders()[i].uid;
  }
  const Symbol& a = s.head();
  const Symbol& b = t.head();
  bool ok;
  if (a.is_bound_var() && bound.count(a.uid)) {
    ok = b.is_bound_var() && bound.at(a.uid) == b.uid;
  } else if (a.is_var()) {
    ok = b.is_var() && bij.admit(a, b);
  } else {
    ok = a == b;
  }
  if (!ok) return false;
  for (std::size_t i = 0; i < s.args().size(); ++i)
    if (!eq_mod_vars_rec(s.args()[i], t.args()[i], bound, bij)) return false;
  return true;
}

}  // namespace detail

inline bool alpha_eq_mod_vars(const Term& s, const Term& t) {
  if (s.type() != t.type()) return false;
  std::map<std::uint64_t, std::uint64_t> bound;
  detail::VarBij bij;
  return detail::eq_mod_vars_rec(s, t, bound, bij);
}

inline std::string problems_path(const std::string& name) {
  return std::string(HRSTERM_PROBLEMS_DIR) + "/" + name;
}

inline std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline RewriteSystem load_problem(const std::string& name) {
  return parse_problem(slurp(problems_path(name)));
}

}  // namespace hrs::testing
