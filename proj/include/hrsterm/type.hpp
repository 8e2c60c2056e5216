#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hrs {

// Simple types over a set of basic type names, closed under ->.
// Every type decomposes uniquely as a1 -> ... -> an -> b with b basic.
class SimpleType {
public:
  static SimpleType base(std::string name) {
    SimpleType t;
    t.node_ = std::make_shared<const Node>(Node{std::move(name), {}, {}});
    return t;
  }

  static SimpleType arrow(SimpleType dom, SimpleType cod) {
    SimpleType t;
    t.node_ = std::make_shared<const Node>(
        Node{{}, std::move(dom.node_), std::move(cod.node_)});
    return t;
  }

  // a1 -> a2 -> ... -> an -> b, right-associated.
  static SimpleType arrows(const std::vector<SimpleType>& doms, SimpleType cod) {
    SimpleType t = std::move(cod);
    for (auto it = doms.rbegin(); it != doms.rend(); ++it)
      t = arrow(*it, t);
    return t;
  }

  bool is_base() const { return node_->dom == nullptr; }
  bool is_arrow() const { return !is_base(); }

  const std::string& base_name() const {
    if (!is_base()) throw std::logic_error("base_name on arrow type");
    return node_->base;
  }

  SimpleType domain() const {
    if (is_base()) throw std::logic_error("domain of base type");
    SimpleType t;
    t.node_ = node_->dom;
    return t;
  }

  SimpleType codomain() const {
    if (is_base()) throw std::logic_error("codomain of base type");
    SimpleType t;
    t.node_ = node_->cod;
    return t;
  }

  // (a1..an, b) with b basic.
  std::pair<std::vector<SimpleType>, SimpleType> decompose() const {
    std::vector<SimpleType> doms;
    SimpleType t = *this;
    while (t.is_arrow()) {
      doms.push_back(t.domain());
      t = t.codomain();
    }
    return {std::move(doms), std::move(t)};
  }

  int arity() const {
    int n = 0;
    SimpleType t = *this;
    while (t.is_arrow()) {
      ++n;
      t = t.codomain();
    }
    return n;
  }

  friend bool operator==(const SimpleType& a, const SimpleType& b) {
    if (a.node_ == b.node_) return true;
    if (a.is_base() != b.is_base()) return false;
    if (a.is_base()) return a.base_name() == b.base_name();
    return a.domain() == b.domain() && a.codomain() == b.codomain();
  }
  friend bool operator!=(const SimpleType& a, const SimpleType& b) {
    return !(a == b);
  }

  // Strict subterm relation on types (irreflexive, transitive).
  bool strict_subterm_of(const SimpleType& other) const {
    if (other.is_base()) return false;
    const SimpleType d = other.domain(), c = other.codomain();
    return *this == d || *this == c || strict_subterm_of(d) ||
           strict_subterm_of(c);
  }

  std::string str() const {
    if (is_base()) return base_name();
    const SimpleType d = domain();
    std::string lhs = d.is_arrow() ? "(" + d.str() + ")" : d.str();
    return lhs + " -> " + codomain().str();
  }

private:
  struct Node {
    std::string base;                  // set iff basic
    std::shared_ptr<const Node> dom;   // set iff arrow
    std::shared_ptr<const Node> cod;
  };
  std::shared_ptr<const Node> node_;
};

}  // namespace hrs
