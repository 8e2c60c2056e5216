#include <catch2/catch_amalgamated.hpp>

#include "hrsterm/normalize.hpp"
#include "hrsterm/parser.hpp"
#include "hrsterm/pretty.hpp"
#include "hrsterm/term.hpp"
#include "support/generators.hpp"

using namespace hrs;

namespace {

const char* kSumSrc = R"(
type N;
type L;
fun 0 : N;
fun s : N -> N;
fun nil : L;
fun cons : N -> L -> L;
fun foldl : (N -> N -> N) -> N -> L -> N;
fun add : N -> N -> N;
fun sum : L -> N;
var F : N -> N -> N;
var G : N -> N;
var X : N;
var Y : N;
var Z : N;
var L : L;
rule foldl_nil : foldl(\x y. F(x, y), X, nil) -> X;
rule foldl_cons : foldl(\x y. F(x, y), X, cons(Y, L)) -> foldl(\x y. F(x, y), F(X, Y), L);
rule add_zero : add(0, Y) -> Y;
rule add_succ : add(s(X), Y) -> s(add(X, Y));
rule sum_def : sum(L) -> foldl(\x y. add(x, y), 0, L);
)";

RewriteSystem& sys() {
  static RewriteSystem R = parse_problem(kSumSrc);
  return R;
}

Term T(const std::string& text) { return parse_term(text, sys()); }

// Abstractions need an expected type for binder inference.
Term TL(const std::string& text, const std::string& ty) {
  return parse_term(text, sys(), parse_type(ty, sys()));
}

}  // namespace

TEST_CASE("simple types decompose uniquely") {
  const SimpleType n = SimpleType::base("N");
  const SimpleType t = SimpleType::arrows({n, n}, n);
  auto [doms, base] = t.decompose();
  REQUIRE(doms.size() == 2);
  REQUIRE(base == n);
  REQUIRE(t.arity() == 2);
  REQUIRE(t == SimpleType::arrow(n, SimpleType::arrow(n, n)));

  // strict subterm relation: irreflexive, transitive
  REQUIRE(!t.strict_subterm_of(t));
  REQUIRE(n.strict_subterm_of(t));
  const SimpleType u = SimpleType::arrow(t, n);
  REQUIRE(t.strict_subterm_of(u));
  REQUIRE(n.strict_subterm_of(u));
}

TEST_CASE("normalize: beta identity redex") {
  const SimpleType n = SimpleType::base("N");
  const Symbol a = make_fun("0", n);
  const Symbol x = fresh_bound_var("x", n);
  const Preterm p =
      Preterm::app(Preterm::abs(x, Preterm::atom(x)), Preterm::atom(a));
  const Term t = normalize(p);
  REQUIRE(alpha_eq(t, T("0")));
}

TEST_CASE("normalize: eta-expansion of a bare functional variable") {
  // F : N -> N -> N normalizes to \x y. F(x, y)
  const Symbol F = make_free_var(
      "F", SimpleType::arrows({SimpleType::base("N"), SimpleType::base("N")},
                              SimpleType::base("N")));
  const Term t = normalize(Preterm::atom(F));
  REQUIRE(t.binders().size() == 2);
  REQUIRE(t.head() == F);
  REQUIRE(t.args().size() == 2);
  REQUIRE(eta_long_var(t.args()[0]).value() == t.binders()[0]);
  REQUIRE(eta_long_var(t.args()[1]).value() == t.binders()[1]);
  REQUIRE(alpha_eq(t, TL("\\x y. F(x, y)", "N -> N -> N")));
}

TEST_CASE("normalize: idempotent on embedded terms") {
  const Term t = T("foldl(\\x y. add(x, y), 0, cons(X, L))");
  REQUIRE(alpha_eq(normalize(embed(t)), t));
}

TEST_CASE("substitute: first-order case") {
  Substitution th;
  th.bind(make_free_var("Y", SimpleType::base("N")), T("s(0)"));
  REQUIRE(alpha_eq(substitute(T("add(0, Y)"), th), T("add(0, s(0))")));
}

TEST_CASE("substitute: beta-reduces higher-order bindings") {
  // F(X, Y) {F -> \x y. add(x, y)}  ==  add(X, Y)
  Substitution th;
  const Symbol F = free_vars(TL("\\x y. F(x, y)", "N -> N -> N")).front();
  th.bind(F, TL("\\x y. add(x, y)", "N -> N -> N"));
  REQUIRE(alpha_eq(substitute(T("F(X, Y)"), th), T("add(X, Y)")));
}

TEST_CASE("substitute: empty substitution is identity") {
  const Term t = T("foldl(\\x y. F(x, y), X, L)");
  REQUIRE(alpha_eq(substitute(t, Substitution{}), t));
}

TEST_CASE("alpha equivalence basics") {
  REQUIRE(alpha_eq(TL("\\x. s(x)", "N -> N"), TL("\\y. s(y)", "N -> N")));
  REQUIRE(!alpha_eq(TL("\\x. s(x)", "N -> N"), TL("\\x. G(x)", "N -> N")));
  REQUIRE(!alpha_eq(T("s(X)"), T("s(Y)")));  // free variables are rigid
  REQUIRE(alpha_eq(T("X"), T("X")));
}

TEST_CASE("subterms follow the recursive definition") {
  const Term t = T("s(add(X, Y))");
  const TermSet sub = subterms(t);
  REQUIRE(sub.size() == 4);
  REQUIRE(sub.contains(t));
  REQUIRE(sub.contains(T("add(X, Y)")));
  REQUIRE(sub.contains(T("X")));
  REQUIRE(sub.contains(T("Y")));

  REQUIRE(subterms(T("X")).size() == 1);

  // Sub(\x. s(x)) = {\x. s(x), s(x), x} with x dangling in the last two
  const Term lam = TL("\\x. s(x)", "N -> N");
  const TermSet ls = subterms(lam);
  REQUIRE(ls.size() == 3);
  REQUIRE(ls.contains(lam));
  REQUIRE(ls.contains(lam.strip_binders(1)));
  REQUIRE(ls.contains(lam.strip_binders(1).args()[0]));
}

TEST_CASE("positions and subterm_at") {
  const Term lam = TL("\\x. s(x)", "N -> N");
  const auto ps = positions(lam);
  REQUIRE(ps.size() == 3);
  REQUIRE(ps[0] == Position{});
  REQUIRE(ps[1] == Position{1});
  REQUIRE(ps[2] == Position{1, 1});

  REQUIRE(alpha_eq(subterm_at(T("add(X, Y)"), {2}), T("Y")));
  const Term t = T("foldl(\\x y. F(x, y), X, L)");
  REQUIRE(alpha_eq(subterm_at(t, {}), t));
  REQUIRE_THROWS_AS(subterm_at(t, {9}), std::out_of_range);

  // a subterm below a binder carries its context
  const auto v = subterm_at_opt(lam, {1, 1});
  REQUIRE(v.has_value());
  REQUIRE(v->context.size() == 1);
  REQUIRE(v->term.head() == v->context[0]);
}

TEST_CASE("free variables") {
  auto names = [](const Term& t) {
    std::set<std::string> out;
    for (const Symbol& v : free_vars(t)) out.insert(v.name);
    return out;
  };
  REQUIRE(names(T("add(X, Y)")) == std::set<std::string>{"X", "Y"});
  REQUIRE(names(TL("\\x. G(x)", "N -> N")) == std::set<std::string>{"G"});
  REQUIRE(names(T("0")).empty());
}

TEST_CASE("property: normalization is idempotent and type-preserving") {
  testing::TermGen gen(sys(), 20240801);
  for (int i = 0; i < 1000; ++i) {
    const Term t = gen.base_term(3);
    const Term again = normalize(embed(t));
    REQUIRE(alpha_eq(again, t));
    REQUIRE(again.type() == t.type());
  }
}

TEST_CASE("property: substitution composition respects normalization") {
  testing::TermGen gen(sys(), 424242);
  for (int i = 0; i < 300; ++i) {
    const Term t = gen.base_term(2);
    const Substitution theta = gen.subst_for(t, 2);
    // sigma binds what is left free after theta
    const Term mid = substitute(t, theta);
    const Substitution sigma = gen.subst_for(mid, 1);
    // (theta ; sigma)(X) = theta(X).sigma-dn
    Substitution composed;
    std::set<std::string> dom;
    for (const auto& [x, u] : theta) {
      composed.bind(x, substitute(u, sigma));
      dom.insert(x.name);
    }
    for (const auto& [x, u] : sigma)
      if (!dom.count(x.name)) composed.bind(x, u);
    REQUIRE(alpha_eq(substitute(mid, sigma), substitute(t, composed)));
  }
}

TEST_CASE("property: substitution preserves types") {
  testing::TermGen gen(sys(), 777);
  for (int i = 0; i < 200; ++i) {
    const Term t = gen.base_term(2);
    const Substitution theta = gen.subst_for(t, 2);
    REQUIRE(substitute(t, theta).type() == t.type());
  }
}

TEST_CASE("property: every position yields a well-formed subterm view") {
  testing::TermGen gen(sys(), 1313);
  for (int i = 0; i < 200; ++i) {
    const Term t = gen.base_term(2);
    for (const Position& p : positions(t)) {
      const auto v = subterm_at_opt(t, p);
      REQUIRE(v.has_value());
      // the view's term is a valid Term: re-normalizing it is alpha-neutral
      REQUIRE(alpha_eq(normalize(embed(v->term)), v->term));
    }
  }
}

TEST_CASE("canonical rendering agrees with alpha-equivalence") {
  testing::TermGen gen(sys(), 99);
  for (int i = 0; i < 200; ++i) {
    const Term a = gen.base_term(2);
    const Term b = gen.base_term(2);
    REQUIRE((canonical(a) == canonical(b)) == alpha_eq(a, b));
    REQUIRE(canonical(a) == canonical(normalize(embed(a))));
  }
}

TEST_CASE("pretty printing round-trips through the parser") {
  const Term t = T("foldl(\\x y. add(x, s(y)), 0, cons(X, L))");
  REQUIRE(alpha_eq(parse_term(pretty(t), sys()), t));
}
