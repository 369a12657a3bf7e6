#include <doctest.h>

#include <random>
#include <set>

#include "fixtures.hpp"
#include "rswork/builders.hpp"
#include "rswork/cat.hpp"
#include "rswork/error.hpp"

using namespace rswork;

namespace {

Graph graph(const std::string& name) { return dsl::build(fx::load(name).graph()); }

FinCat one_unit() {
  FinCat::Builder b;
  auto u = b.add_object("u");
  b.add_unit(u, "1");
  return b.build();
}

Mor mor(const FinCat& C, const std::string& n) {
  auto x = C.find_morphism(n);
  REQUIRE(x.has_value());
  return *x;
}

}  // namespace

TEST_CASE("fixture categories satisfy the laws") {
  CHECK(validate_category(*fx::category("idem")).ok);
  CHECK(validate_category(*fx::category("covering", "swap")).ok);
  CHECK(validate_category(*fx::category("covering", "Z2")).ok);
  auto N = fx::category("nwindow");
  auto r = validate_category(*N);
  CHECK(r.ok);
  CHECK(N->truncated());
  CHECK(r.skipped_triples > 0);
}

TEST_CASE("broken unit law is reported") {
  auto C = *fx::category("idem");
  Mor one = mor(C, "1"), e = mor(C, "e");
  C.override_composition(one, e, one);
  auto r = validate_category(C);
  CHECK_FALSE(r.ok);
  REQUIRE_FALSE(r.violations.empty());
  bool has_unit = false;
  for (const auto& v : r.violations) has_unit |= v.law.find("unit") != std::string::npos;
  CHECK(has_unit);
}

TEST_CASE("broken associativity is reported") {
  // swap groupoid with s_q s_p sent to the wrong unit
  auto C = *fx::category("covering", "swap");
  C.override_composition(mor(C, "s_q"), mor(C, "s_p"), mor(C, "s_p"));
  CHECK_FALSE(validate_category(C).ok);
}

TEST_CASE("bisections of a single unit") {
  auto C = one_unit();
  auto B = enumerate_bisections(C);
  REQUIRE(B.size() == 2);
  CHECK(B[0].empty());
  CHECK(B[1] == Bisection{0});
}

TEST_CASE("bisections of one loop are singletons multiplying like N") {
  const std::size_t N = 4;
  auto C = graph_category(graph("loop1"), N);
  CHECK(C.num_morphisms() == N + 1);
  CHECK(C.truncated());
  auto B = enumerate_bisections(C);
  CHECK(B.size() == N + 2);  // empty set and every singleton
  for (const auto& U : B) CHECK(U.size() <= 1);
  // e_n e_m = e_{n+m}, names are x.x...x
  auto e = [&](std::size_t n) {
    if (n == 0) return mor(C, "v");
    std::string s = "x";
    for (std::size_t i = 1; i < n; ++i) s += ".x";
    return mor(C, s);
  };
  for (std::size_t n = 0; n <= N; ++n)
    for (std::size_t m = 0; n + m <= N; ++m) CHECK(C.compose(e(n), e(m)) == e(n + m));
  CHECK_FALSE(C.compose(e(2), e(3)).has_value());
  CHECK(C.overflows(e(2), e(3)));
}

TEST_CASE("bisection predicate") {
  auto C = *fx::category("covering", "swap");
  Mor sp = mor(C, "s_p"), sq = mor(C, "s_q"), p = mor(C, "1_p"), q = mor(C, "1_q");
  Bisection a{std::min(sp, sq), std::max(sp, sq)};
  CHECK(is_bisection(C, a));
  Bisection b{std::min(p, sp), std::max(p, sp)};  // both have domain p
  CHECK_FALSE(is_bisection(C, b));
  Bisection c{std::min(sp, q), std::max(sp, q)};  // both land in q
  CHECK_FALSE(is_bisection(C, c));
  CHECK(enumerate_bisections(C).size() == 7);
}

TEST_CASE("bisection products compose elementwise") {
  auto C = *fx::category("covering", "swap");
  Mor sp = mor(C, "s_p"), sq = mor(C, "s_q"), p = mor(C, "1_p"), q = mor(C, "1_q");
  Bisection swap{std::min(sp, sq), std::max(sp, sq)};
  Bisection units{std::min(p, q), std::max(p, q)};
  CHECK(bisection_product(C, swap, swap) == units);
  CHECK(bisection_product(C, Bisection{sp}, Bisection{sp}).empty());
  CHECK(bisection_product(C, Bisection{sq}, Bisection{sp}) == Bisection{p});
}

TEST_CASE("Bis is a restriction semigroup with d and r as structure maps") {
  for (auto C : {fx::category("idem"), fx::category("covering", "swap"), fx::category("arrow")}) {
    auto bis = bis_semigroup(*C);
    CHECK(bis.S.is_restriction());
    CHECK(verify_identities(bis.S).pass);
    for (Elem s = 0; s < bis.S.size(); ++s) {
      std::set<Mor> dU, rU;
      for (Mor x : bis.bisections[s]) {
        dU.insert(C->unit(C->d(x)));
        rU.insert(C->unit(C->r(x)));
      }
      auto as_set = [&](Elem e) {
        const auto& b = bis.bisections[e];
        return std::set<Mor>(b.begin(), b.end());
      };
      CHECK(as_set(bis.S.lambda(s)) == dU);
      CHECK(as_set(bis.S.rho(s)) == rU);
    }
  }
  CHECK_THROWS_AS(bis_semigroup(*fx::category("nwindow")), TruncationError);
}

TEST_CASE("graph categories count paths") {
  for (std::size_t m = 1; m <= 3; ++m) {
    Graph G;
    G.vertices = {"v"};
    for (std::size_t i = 0; i < m; ++i) G.edges.push_back({"x" + std::to_string(i), 0, 0});
    auto C = graph_category(G, 2);
    CHECK(C.num_morphisms() == 1 + m + m * m);
    CHECK(validate_category(C).ok);
  }
  auto E = graph_category(graph("edge"), 5);
  CHECK(E.num_morphisms() == 3);
  CHECK_FALSE(E.truncated());
  // a: u -> v, so d(a) = u and r(a) = v
  Mor a = mor(E, "a");
  CHECK(E.object_name(E.d(a)) == "u");
  CHECK(E.object_name(E.r(a)) == "v");
}

TEST_CASE("path concatenation order") {
  auto P = *fx::category("path");
  Mor a = mor(P, "a"), b = mor(P, "b");
  // b after a
  auto ba = P.compose(b, a);
  REQUIRE(ba.has_value());
  CHECK(P.morphism_name(*ba) == "b.a");
  CHECK_FALSE(P.compose(a, b).has_value());
  CHECK_FALSE(P.truncated());
}

TEST_CASE("transformation category") {
  // swap on {p, q}
  auto C = transformation_category({"p", "q"}, {1, 0}, 2);
  CHECK(C.num_morphisms() == 6);
  CHECK(C.num_objects() == 2);
  CHECK(validate_category(C).ok);
  CHECK(C.truncated());
  auto x = mor(C, "(q,1,p)");
  CHECK(C.object_name(C.d(x)) == "p");
  CHECK(C.object_name(C.r(x)) == "q");
  CHECK(C.compose(mor(C, "(p,1,q)"), x) == mor(C, "(p,2,p)"));
}

TEST_CASE("category of a restriction semigroup") {
  auto S = fx::semigroup("i2");
  auto C = category_of_semigroup(S);
  CHECK(C.num_objects() == S.projections().size());
  CHECK(C.num_morphisms() == S.size());
  CHECK(validate_category(C).ok);
  for (Mor s = 0; s < C.num_morphisms(); ++s)
    for (Mor t = 0; t < C.num_morphisms(); ++t) {
      bool defined = S.lambda(s) == S.rho(t);
      CHECK(C.compose(s, t).has_value() == defined);
      if (defined) CHECK(*C.compose(s, t) == S.mul(s, t));
    }
  // I2 is inverse, so its category is a groupoid
  CHECK(is_groupoid(C));
}

TEST_CASE("groupoids and cancellation") {
  auto swap = fx::category("covering", "swap");
  auto inv = groupoid_inverses(*swap);
  REQUIRE(inv);
  for (Mor x = 0; x < swap->num_morphisms(); ++x) {
    CHECK(swap->compose((*inv)[x], x) == swap->unit(swap->d(x)));
    CHECK(swap->compose(x, (*inv)[x]) == swap->unit(swap->r(x)));
  }
  CHECK(is_cancellative(*swap));

  auto idem = fx::category("idem");
  CHECK_FALSE(is_groupoid(*idem));
  auto l = is_left_cancellative(*idem);
  CHECK_FALSE(l.holds);
  REQUIRE(l.witness);
  auto [x, y, w] = *l.witness;
  CHECK(y != w);
  CHECK(idem->compose(x, y) == idem->compose(x, w));

  CHECK(is_cancellative(graph_category(graph("loops3"), 3)));
  auto N = multiplicative_window(4);
  CHECK_FALSE(is_left_cancellative(N).holds);  // 0 * 1 = 0 * 2
}

TEST_CASE("multiplicative window") {
  auto N = multiplicative_window(4);
  CHECK(N.num_objects() == 1);
  CHECK(N.num_morphisms() == 5);
  CHECK(N.compose(mor(N, "2"), mor(N, "2")) == mor(N, "4"));
  CHECK(N.overflows(mor(N, "2"), mor(N, "3")));
  CHECK(N.unit(0) == mor(N, "1"));
}

TEST_CASE("bisection guard") {
  Graph G;
  G.vertices = {"v"};
  for (int i = 0; i < 5; ++i) G.edges.push_back({"x" + std::to_string(i), 0, 0});
  auto C = graph_category(G, 2);  // 31 morphisms
  CHECK_THROWS_AS(enumerate_bisections(C), SizeError);
}
