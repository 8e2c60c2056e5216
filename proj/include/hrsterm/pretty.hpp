#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "hrsterm/term.hpp"

namespace hrs {

namespace detail {

inline void collect_bound(const Term& t, std::vector<Symbol>& out) {
  for (const Symbol& b : t.binders()) out.push_back(b);
  if (t.head().is_bound_var()) out.push_back(t.head());
  for (const Term& a : t.args()) collect_bound(a, out);
}

inline void pretty_rec(const Term& t,
                       const std::map<std::uint64_t, std::string>& names,
                       std::string& out) {
  if (!t.binders().empty()) {
    out += '\\';
    for (std::size_t i = 0; i < t.binders().size(); ++i) {
      if (i) out += ' ';
      out += names.at(t.binders()[i].uid);
    }
    out += ". ";
  }
  const Symbol& h = t.head();
  out += h.is_bound_var() ? names.at(h.uid) : h.display();
  if (!t.args().empty()) {
    out += '(';
    for (std::size_t i = 0; i < t.args().size(); ++i) {
      if (i) out += ", ";
      pretty_rec(t.args()[i], names, out);
    }
    out += ')';
  }
}

}  // namespace detail

// Prints in the surface syntax: f(t1, ..., tn), \x y. body. Bound variables
// keep their display names; when two distinct bound variables in the same
// term share a name, later ones get a numeric suffix.
inline std::string pretty(const Term& t) {
  std::vector<Symbol> bound;
  detail::collect_bound(t, bound);
  std::map<std::uint64_t, std::string> names;
  std::set<std::string> used;
  for (const Symbol& b : bound) {
    if (names.count(b.uid)) continue;
    std::string n = b.name;
    int k = 1;
    while (used.count(n)) n = b.name + std::to_string(k++);
    names[b.uid] = n;
    used.insert(n);
  }
  std::string out;
  detail::pretty_rec(t, names, out);
  return out;
}

}  // namespace hrs
