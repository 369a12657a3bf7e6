#include <doctest.h>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "rswork/error.hpp"
#include "rswork/germs.hpp"

using namespace rswork;

namespace {

EtaleAction natural_i2(const FinRS& S) { return dsl::build(fx::load("i2").action(), S); }

// Every element acts as the identity on one point.
EtaleAction trivial(const FinRS& S) {
  EtaleAction a;
  a.point_names = {"pt"};
  a.theta.assign(S.size(), PartialMap(std::vector<Point>{0}));
  return a;
}

}  // namespace

TEST_CASE("actions are validated") {
  auto S = fx::semigroup("i2");
  auto a = natural_i2(S);
  CHECK(validate_action(S, a).ok);
  CHECK(validate_action(S, canonical_action(S).action).ok);

  auto bad = a;
  bad.theta[*S.find("[1->2]")].set(0, 0);
  auto r = validate_action(S, bad);
  CHECK_FALSE(r.ok);
  CHECK_FALSE(r.failed.empty());
  CHECK_THROWS_AS(germ_category(S, bad), ValidationError);
}

TEST_CASE("trivial action of Fab0: only units, cancellative but not ample") {
  auto S = fx::semigroup("fab0");
  auto a = trivial(S);
  REQUIRE(validate_action(S, a).ok);
  auto G = germ_category(S, a);
  CHECK(G.num_classes() == 1);
  CHECK(G.category().num_morphisms() == 1);
  auto r = check_ample_cancellative(S, a);
  CHECK_FALSE(r.left_ample);
  CHECK(r.left_cancellative);
  CHECK(r.consistent);  // only the forward direction is claimed
}

TEST_CASE("canonical germs of Fab0 are not left cancellative") {
  auto S = fx::semigroup("fab0");
  auto can = canonical_action(S);
  auto G = germ_category(S, can.action);
  CHECK(G.num_classes() == 5);
  CHECK(G.num_classes() == oracle::germ_class_count(S, can.action));
  auto r = check_ample_cancellative(S);
  CHECK_FALSE(r.left_ample);
  CHECK_FALSE(r.left_cancellative);
  CHECK(r.consistent);
  REQUIRE(r.witness);
  auto [x, y, w] = *r.witness;
  const auto& C = G.category();
  CHECK(C.morphism_name(x) == "[const_a,ς_1]");
  CHECK(y != w);
  CHECK(C.compose(x, y) == C.compose(x, w));
}

TEST_CASE("ample iff left cancellative for the canonical action") {
  for (const auto& name : fx::restriction_semigroups()) {
    auto S = fx::semigroup(name);
    auto r = check_ample_cancellative(S);
    CHECK_MESSAGE(r.consistent, name);
    CHECK_MESSAGE(r.left_ample == r.left_cancellative, name);
    CHECK_MESSAGE(r.left_ample == oracle::left_ample(S), name);
  }
}

TEST_CASE("germ classes agree with the brute force relation") {
  for (const auto& name : fx::restriction_semigroups()) {
    auto S = fx::semigroup(name);
    auto can = canonical_action(S);
    auto G = germ_category(S, can.action);
    CHECK_MESSAGE(G.num_classes() == oracle::germ_class_count(S, can.action), name);
    CHECK_MESSAGE(validate_category(G.category()).ok, name);
  }
  auto S = fx::semigroup("i2");
  auto a = natural_i2(S);
  auto G = germ_category(S, a);
  CHECK(G.num_classes() == oracle::germ_class_count(S, a));
  CHECK(G.num_classes() == 4);
}

TEST_CASE("germs of I2 on two points form the pair groupoid") {
  auto S = fx::semigroup("i2");
  auto G = germ_category(S, natural_i2(S));
  const auto& C = G.category();
  CHECK(C.num_objects() == 2);
  CHECK(is_groupoid(C));
  // one arrow between any two points
  for (Obj u = 0; u < 2; ++u)
    for (Obj v = 0; v < 2; ++v) {
      int n = 0;
      for (Mor x : C.with_source(u)) n += C.r(x) == v;
      CHECK(n == 1);
    }
}

TEST_CASE("germ classes and witnesses") {
  auto S = fx::semigroup("i2");
  auto a = natural_i2(S);
  auto G = germ_category(S, a);
  Elem swap = *S.find("[1->2,2->1]"), s12 = *S.find("[1->2]");
  // swap and [1->2] agree on 1 through e1
  CHECK(G.class_of(swap, 0) == G.class_of(s12, 0));
  CHECK(germ_witness(S, a, swap, s12, 0) == S.find("e1"));
  CHECK_FALSE(germ_witness(S, a, swap, *S.find("1"), 0).has_value());
  CHECK_FALSE(G.class_of(s12, 1).has_value());
  for (Mor c = 0; c < G.num_classes(); ++c)
    for (const auto& g : G.members(c)) CHECK(G.representative(c) <= g);
  CHECK(G.theta_set(swap).size() == 2);
}

TEST_CASE("S tilde") {
  for (const auto& name : fx::restriction_semigroups()) {
    auto r = s_tilde(fx::semigroup(name));
    CHECK_MESSAGE(r.injective, name);
    CHECK_MESSAGE(r.is_full_preimage, name);
    CHECK_MESSAGE(r.closed_under_left, name);
    CHECK_MESSAGE(r.functor_iso, name);
    CHECK_MESSAGE(r.equals_whole, name);
    CHECK_MESSAGE(r.restriction_identity, name);
  }
}

TEST_CASE("reconstruction from bisections") {
  for (auto C : {fx::category("arrow"), fx::category("path"), fx::category("covering", "swap"),
                 fx::category("idem")}) {
    auto r = bis_germ_reconstruction(*C);
    CHECK(r.ok());
    CHECK(r.germ_morphisms == C->num_morphisms());
  }
  CHECK(bis_germ_reconstruction(*fx::category("arrow")).bisections == 5);
  CHECK_THROWS_AS(bis_germ_reconstruction(*fx::category("nwindow")), TruncationError);
}

TEST_CASE("induced algebra action") {
  auto S = fx::semigroup("i2");
  auto a = natural_i2(S);
  auto alpha = induced_algebra_action(S, a);
  using V = Vector<Complex>;
  for (Elem s = 0; s < S.size(); ++s) {
    V f = V::Zero(2);
    for (Point x : a.domain(S.lambda(s))) f[x] = Complex(1.0 + x, -2.0);
    V g = alpha.apply(s, f);
    CHECK(alpha.supported_in(g, S.rho(s)));
    CHECK(alpha.apply_inverse(s, g) == f);
    for (Elem t = 0; t < S.size(); ++t) {
      // alpha_t alpha_s = alpha_ts on functions supported in D_lambda(ts)
      V h = V::Zero(2);
      for (Point x : a.domain(S.lambda(S.mul(t, s)))) h[x] = Complex(3.0, x);
      CHECK(alpha.apply(t, alpha.apply(s, h)) == alpha.apply(S.mul(t, s), h));
    }
  }
  for (Elem e : S.projections()) {
    V f = alpha.indicator<Complex>(e);
    CHECK(alpha.apply(e, f) == f);
  }
  V one = V::Ones(2);
  CHECK_THROWS_AS(alpha.apply(*S.find("[1->2]"), one), ValidationError);
}
