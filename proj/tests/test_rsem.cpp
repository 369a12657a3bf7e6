#include <doctest.h>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "rswork/builders.hpp"
#include "rswork/error.hpp"
#include "rswork/rsem.hpp"

using namespace rswork;

namespace {
Elem el(const FinRS& S, const std::string& n) {
  auto s = S.find(n);
  REQUIRE(s.has_value());
  return *s;
}
}  // namespace

TEST_CASE("builder tables agree with composing the maps") {
  CHECK(oracle::table_matches_maps(fx::semigroup("i2"), "12"));
  CHECK(oracle::table_matches_maps(fx::semigroup("i3"), "123"));
  CHECK(oracle::table_matches_maps(fx::semigroup("j2"), "ab"));
  CHECK(oracle::table_matches_maps(fx::semigroup("fab0"), "ab"));
  CHECK(fx::semigroup("i3").size() == 34);
}

TEST_CASE("partial surjections fail exactly P8 at a constant map") {
  auto J = fx::semigroup("j2");
  CHECK(J.size() == 9);
  const auto& ax = J.axioms();
  for (int i = 0; i < 7; ++i) CHECK(ax.pass[i]);
  CHECK_FALSE(ax.pass[7]);
  REQUIRE(ax.witnesses.size() == 1);
  CHECK(ax.witnesses[0].axiom == 8);
  auto s = ax.witnesses[0].tuple[0], f = ax.witnesses[0].tuple[1];
  auto ms = oracle::decode(J.name(s), "ab");
  // s is a constant map onto one point c, f the identity on {c}
  REQUIRE(ms.size() == 2);
  char c = ms.begin()->second;
  CHECK(ms.rbegin()->second == c);
  CHECK(oracle::decode(J.name(f), "ab") == oracle::PMap{{c, c}});
  CHECK_FALSE(J.is_restriction());
  CHECK_THROWS_AS(J.require_restriction("test"), NotRestrictionError);
}

TEST_CASE("partial surjection structure maps are domain and image identities") {
  auto J = fx::semigroup("j2");
  Elem f = el(J, "const_a");
  CHECK(J.lambda(f) == el(J, "1"));
  CHECK(J.rho(f) == el(J, "ea"));
}

TEST_CASE("symmetric inverse monoid passes every axiom") {
  auto S = fx::semigroup("i2");
  CHECK(S.size() == 7);
  CHECK(S.axioms().restriction());
  CHECK(S.axioms().classification == Classification::restriction);
  // lambda(s) = s^-1 s, the identity on the domain
  for (Elem s = 0; s < S.size(); ++s) {
    oracle::PMap dom;
    for (auto [x, y] : oracle::decode(S.name(s), "12")) dom[x] = x;
    CHECK(oracle::decode(S.name(S.lambda(s)), "12") == dom);
  }
}

TEST_CASE("a monoid with only the unit as projection is a restriction semigroup") {
  // Z/3
  FinRS Z3(3, {0, 1, 2, 1, 2, 0, 2, 0, 1}, {0});
  CHECK(Z3.is_restriction());
  for (Elem s = 0; s < 3; ++s) {
    CHECK(Z3.lambda(s) == 0);
    CHECK(Z3.rho(s) == 0);
  }
}

TEST_CASE("derived structure maps") {
  auto S = fx::semigroup("i2");
  Elem s = el(S, "[1->2]");
  CHECK(S.lambda(s) == el(S, "e1"));
  CHECK(S.rho(s) == el(S, "e2"));
  for (Elem e : S.projections()) {
    CHECK(S.lambda(e) == e);
    CHECK(S.rho(e) == e);
  }
}

TEST_CASE("natural order") {
  auto S = fx::semigroup("i2");
  CHECK(natural_leq(S, el(S, "[1->2]"), el(S, "[1->2,2->1]")));
  CHECK_FALSE(natural_leq(S, el(S, "[1->2,2->1]"), el(S, "[1->2]")));
  for (const auto& name : {"i2", "i3", "fab0", "diamond"}) {
    auto T = fx::semigroup(name);
    for (Elem s = 0; s < T.size(); ++s) {
      CHECK(natural_leq(T, s, s));
      for (Elem t = 0; t < T.size(); ++t) CHECK(natural_leq(T, s, t) == oracle::natural_leq(T, s, t));
    }
  }
}

TEST_CASE("ampleness") {
  auto S = fx::semigroup("i2");
  auto a = classify_ample(S);
  CHECK(a.left);
  CHECK(a.right);

  auto F = fx::semigroup("fab0");
  auto b = classify_ample(F);
  CHECK_FALSE(b.left);
  REQUIRE(b.left_witness);
  auto [s, t, u] = *b.left_witness;
  CHECK(F.mul(s, t) == F.mul(s, u));
  CHECK(F.mul(F.lambda(s), t) != F.mul(F.lambda(s), u));
  CHECK(F.name(s).rfind("const_", 0) == 0);

  CHECK(classify_ample(fx::semigroup("monoid1")).left);
  for (const auto& name : fx::restriction_semigroups()) {
    auto T = fx::semigroup(name);
    CHECK(classify_ample(T).left == oracle::left_ample(T));
  }
}

TEST_CASE("inverse semigroups") {
  auto S = fx::semigroup("i2");
  auto inv = is_inverse(S);
  REQUIRE(inv);
  for (Elem s = 0; s < S.size(); ++s) {
    oracle::PMap r;
    for (auto [x, y] : oracle::decode(S.name(s), "12")) r[y] = x;
    CHECK(oracle::decode(S.name((*inv)[s]), "12") == r);
  }
  CHECK_FALSE(is_inverse(fx::semigroup("fab0")));
  auto D = fx::semigroup("diamond");
  auto id = is_inverse(D);
  REQUIRE(id);
  for (Elem s = 0; s < D.size(); ++s) CHECK((*id)[s] == s);
}

TEST_CASE("Wagner-Preston") {
  auto S = fx::semigroup("i2");
  auto wp = wagner_preston_embed(S);
  CHECK(wp.injective);
  CHECK(wp.all_bijective);
  for (Elem e : S.projections()) CHECK(wp.phi[e].is_identity_on_domain());

  auto F = fx::semigroup("fab0");
  auto wf = wagner_preston_embed(F);
  CHECK_FALSE(wf.all_bijective);
  CHECK_FALSE(wf.phi[el(F, "const_a")].injective());
  // J2 is still left restriction, so the representation exists
  CHECK_NOTHROW(wagner_preston_embed(fx::semigroup("j2")));
}

TEST_CASE("regularity window") {
  CHECK(check_regularity_window(fx::semigroup("i2")).coincide);
  CHECK(check_regularity_window(fx::semigroup("diamond")).coincide);
  auto r = check_regularity_window(fx::semigroup("fab0"));
  CHECK_FALSE(r.coincide);
  CHECK(r.mismatch.has_value());
}

TEST_CASE("identities hold on valid restriction semigroups") {
  for (const auto& name : fx::restriction_semigroups()) {
    auto r = verify_identities(fx::semigroup(name));
    CHECK_MESSAGE(r.pass, name << ": " << r.failed);
  }
}

TEST_CASE("a corrupted lambda table is caught") {
  auto S = fx::semigroup("i2");
  auto lambda = S.lambda_table();
  lambda[el(S, "[1->2]")] = el(S, "1");
  FinRS T(S.size(), S.table(), S.projections(), lambda, S.rho_table(), S.names());
  CHECK_FALSE(T.maps_match_derived());
  auto r = verify_identities(T);
  CHECK_FALSE(r.pass);
  CHECK_FALSE(r.witness.empty());
}

TEST_CASE("structural errors") {
  // st = the other element of s: (st)u = s but s(tu) != s
  CHECK_THROWS_AS(FinRS(2, {1, 1, 0, 0}, {0}), StructuralError);
  CHECK_THROWS_AS(FinRS(2, {0, 0, 0}, {0}), StructuralError);
  // a non-idempotent declared as a projection
  CHECK_THROWS_AS(FinRS(3, {0, 1, 2, 1, 2, 0, 2, 0, 1}, {1}), StructuralError);
}
