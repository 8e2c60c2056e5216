#pragma once

#include <atomic>
#include <cstdint>
#include <string>
#include <tuple>
#include <utility>

#include "hrsterm/type.hpp"

namespace hrs {

enum class SymbolKind { Function, FreeVar, BoundVar };

// Function symbols and variables share one representation; the kind keeps
// the namespaces disjoint. Bound variables carry a unique id from the fresh
// supply so that distinct binders never collide even when their display
// names agree. The marked flag is the #-mark of dependency pairs; marked
// symbols never occur in rules of the input system.
struct Symbol {
  std::string name;
  SymbolKind kind = SymbolKind::Function;
  SimpleType type;
  bool marked = false;
  std::uint64_t uid = 0;  // nonzero only for bound variables

  bool is_fun() const { return kind == SymbolKind::Function; }
  bool is_free_var() const { return kind == SymbolKind::FreeVar; }
  bool is_bound_var() const { return kind == SymbolKind::BoundVar; }
  bool is_var() const { return !is_fun(); }

  friend bool operator==(const Symbol& a, const Symbol& b) {
    return a.kind == b.kind && a.marked == b.marked && a.uid == b.uid &&
           a.name == b.name && a.type == b.type;
  }
  friend bool operator!=(const Symbol& a, const Symbol& b) { return !(a == b); }

  // Deterministic total order (map keys, stable iteration).
  friend bool operator<(const Symbol& a, const Symbol& b) {
    const auto ka = std::tuple(a.name, static_cast<int>(a.kind), a.marked, a.uid);
    const auto kb = std::tuple(b.name, static_cast<int>(b.kind), b.marked, b.uid);
    if (ka != kb) return ka < kb;
    return a.type.str() < b.type.str();
  }

  // Display name; marked symbols render with a '#' suffix.
  std::string display() const { return marked ? name + "#" : name; }
};

inline Symbol make_fun(std::string name, SimpleType type, bool marked = false) {
  return Symbol{std::move(name), SymbolKind::Function, std::move(type), marked, 0};
}

inline Symbol make_free_var(std::string name, SimpleType type) {
  return Symbol{std::move(name), SymbolKind::FreeVar, std::move(type), false, 0};
}

namespace detail {
inline std::atomic<std::uint64_t>& fresh_counter() {
  static std::atomic<std::uint64_t> c{0};
  return c;
}
}  // namespace detail

// Fresh bound variable; every binder-opening operation renames through here,
// which enforces the convention that bound variables are pairwise distinct
// and disjoint from free variables.
inline Symbol fresh_bound_var(const std::string& hint, SimpleType type) {
  const std::uint64_t id = ++detail::fresh_counter();
  return Symbol{hint.empty() ? "x" : hint, SymbolKind::BoundVar,
                std::move(type), false, id};
}

// Deterministic runs need a deterministic supply; the CLI resets it per
// problem so identical inputs yield byte-identical certificates.
inline void reset_fresh_supply() { detail::fresh_counter() = 0; }

}  // namespace hrs
