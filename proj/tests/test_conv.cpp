#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "rswork/conv.hpp"
#include "rswork/error.hpp"

using namespace rswork;
using Q = GaussianRational;

namespace {

Q gint(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(-3, 3);
  return Q(d(rng), d(rng));
}

ConvElement<Q> random_element(const std::shared_ptr<const FinCat>& C, std::mt19937_64& rng) {
  ConvElement<Q> f(C);
  for (Mor x = 0; x < C->num_morphisms(); ++x) f[x] = gint(rng);
  return f;
}

Vector<Q> random_vector(std::size_t n, std::mt19937_64& rng) {
  Vector<Q> v(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) v[Eigen::Index(i)] = gint(rng);
  return v;
}

CoveringMorphism fixture_covering() {
  auto ws = fx::load("covering");
  auto C = fx::category("covering", "swap");
  auto D = fx::category("covering", "Z2");
  return dsl::build(ws.covering(), C, D);
}

}  // namespace

TEST_CASE("convolution agrees with the double sum") {
  std::mt19937_64 rng(11);
  for (auto C : {fx::category("covering", "swap"), fx::category("path"), fx::category("idem"),
                 fx::category("arrow")}) {
    for (int k = 0; k < 20; ++k) {
      auto f = random_element(C, rng), g = random_element(C, rng);
      CHECK(convolve(f, g).coeffs() == oracle::naive_convolve(*C, f.coeffs(), g.coeffs()));
    }
  }
}

TEST_CASE("convolution is associative and units act as the identity") {
  std::mt19937_64 rng(12);
  auto C = fx::category("path");
  ConvElement<Q> one(C);
  for (Obj u = 0; u < C->num_objects(); ++u) one[C->unit(u)] = Q(1);
  for (int k = 0; k < 20; ++k) {
    auto f = random_element(C, rng), g = random_element(C, rng), h = random_element(C, rng);
    CHECK(convolve(convolve(f, g), h) == convolve(f, convolve(g, h)));
    CHECK(convolve(one, f) == f);
    CHECK(convolve(f, one) == f);
  }
}

TEST_CASE("delta functions multiply like morphisms") {
  auto C = fx::category("path");
  Mor a = *C->find_morphism("a"), b = *C->find_morphism("b"), ba = *C->find_morphism("b.a");
  auto da = ConvElement<Q>::delta(C, a), db = ConvElement<Q>::delta(C, b);
  CHECK(convolve(db, da) == ConvElement<Q>::delta(C, ba));
  CHECK(convolve(da, db).support().empty());
}

TEST_CASE("convolution refuses to leave the window") {
  auto N = fx::category("nwindow");
  auto two = ConvElement<Complex>::delta(N, *N->find_morphism("2"));
  auto three = ConvElement<Complex>::delta(N, *N->find_morphism("3"));
  CHECK_THROWS_AS(convolve(two, three), TruncationError);
  auto zero = ConvElement<Complex>::delta(N, *N->find_morphism("0"));
  CHECK(convolve(zero, three) == zero);
}

TEST_CASE("involution reverses products") {
  std::mt19937_64 rng(13);
  auto C = fx::category("covering", "swap");
  for (int k = 0; k < 20; ++k) {
    auto f = random_element(C, rng), g = random_element(C, rng);
    CHECK(involution(convolve(f, g)) == convolve(involution(g), involution(f)));
    CHECK(involution(involution(f)) == f);
  }
  auto s = ConvElement<Q>::delta(C, *C->find_morphism("s_p"), Q(2, 1));
  auto t = involution(s);
  CHECK(t[*C->find_morphism("s_q")] == Q(2, -1));
  CHECK_THROWS_AS(involution(ConvElement<Q>(fx::category("path"))), UnsupportedError);
}

TEST_CASE("sup norm and bisection support") {
  auto C = fx::category("covering", "swap");
  ConvElement<Complex> f(C);
  f[*C->find_morphism("s_p")] = Complex(3, 4);
  f[*C->find_morphism("s_q")] = Complex(-1, 0);
  CHECK(sup_norm(f) == doctest::Approx(5.0));
  CHECK(supported_on_bisection(f));
  f[*C->find_morphism("1_p")] = Complex(1, 0);
  CHECK_FALSE(supported_on_bisection(f));
}

TEST_CASE("crossed product of I2") {
  auto S = fx::semigroup("i2");
  auto can = canonical_action(S);
  auto alpha = induced_algebra_action(S, can.action);
  std::mt19937_64 rng(14);
  auto term = [&](Elem s) {
    Vector<Q> a = Vector<Q>::Zero(Eigen::Index(alpha.points()));
    for (Point x : can.action.domain(S.rho(s))) a[x] = gint(rng);
    return crossed_term(alpha, s, a);
  };
  for (int k = 0; k < 50; ++k) {
    Elem s = Elem(rng() % S.size()), t = Elem(rng() % S.size()), u = Elem(rng() % S.size());
    auto a = term(s), b = term(t), c = term(u);
    CHECK(crossed_multiply(alpha, crossed_multiply(alpha, a, b), c) ==
          crossed_multiply(alpha, a, crossed_multiply(alpha, b, c)));
  }
  Vector<Q> outside = Vector<Q>::Ones(Eigen::Index(alpha.points()));
  CHECK_THROWS_AS(crossed_term(alpha, *S.find("[1->2]"), outside), ValidationError);
}

TEST_CASE("psi is multiplicative and sends projections to indicators") {
  for (const auto& name : {"i2", "diamond", "chain"}) {
    auto S = fx::semigroup(name);
    auto can = canonical_action(S);
    auto alpha = induced_algebra_action(S, can.action);
    std::mt19937_64 rng(15);
    for (int k = 0; k < 20; ++k) {
      auto x = random_vector(S.size(), rng), y = random_vector(S.size(), rng);
      CHECK(psi(alpha, semigroup_multiply(S, x, y)) == crossed_multiply(alpha, psi(alpha, x), psi(alpha, y)));
    }
    for (Elem e : S.projections()) {
      Vector<Q> de = Vector<Q>::Zero(Eigen::Index(S.size()));
      de[e] = Q(1);
      CHECK(psi(alpha, de) == crossed_term(alpha, e, alpha.indicator<Q>(e)));
    }
  }
}

TEST_CASE("semigroup algebra product") {
  auto S = fx::semigroup("i2");
  Elem a = *S.find("[1->2]"), b = *S.find("[2->1]");
  Vector<Q> x = Vector<Q>::Zero(7), y = Vector<Q>::Zero(7);
  x[a] = Q(2);
  y[b] = Q(0, 1);
  auto z = semigroup_multiply(S, x, y);
  CHECK(z[S.mul(a, b)] == Q(0, 2));
  for (Elem s = 0; s < 7; ++s)
    if (s != S.mul(a, b)) CHECK(z[s] == Q(0));
}

TEST_CASE("identity and swap coverings") {
  auto phi = fixture_covering();
  CHECK(validate_covering(phi).ok());
  CHECK(validate_covering(identity_covering(phi.source)).ok());
  CHECK(validate_covering(identity_covering(phi.target)).ok());
  CHECK(hat(phi, {*phi.target->find_morphism("g")}).size() == 2);

  std::mt19937_64 rng(16);
  auto id_c = identity_covering(phi.source), id_d = identity_covering(phi.target);
  for (int k = 0; k < 20; ++k) {
    auto f = random_element(phi.target, rng), g = random_element(phi.target, rng);
    CHECK(covering_transfer(phi, convolve(f, g)) ==
          convolve(covering_transfer(phi, f), covering_transfer(phi, g)));
    CHECK(covering_transfer(id_d, f) == f);
    CHECK(covering_transfer(compose(id_d, phi), f) == covering_transfer(phi, covering_transfer(id_d, f)));
    CHECK(covering_transfer(compose(phi, id_c), f) == covering_transfer(id_c, covering_transfer(phi, f)));
  }
}

TEST_CASE("a map that is not a covering is rejected") {
  auto phi = fixture_covering();
  auto bad = phi;
  // s_p sent to the unit breaks the end conditions
  bad.morphisms[*phi.source->find_morphism("s_p")] = {*phi.target->find_morphism("1")};
  CHECK_FALSE(validate_covering(bad).ok());
  auto empty = phi;
  empty.morphisms[*phi.source->find_morphism("s_q")] = {};
  CHECK_FALSE(validate_covering(empty).ok());
  CHECK_THROWS_AS(compose(phi, phi), ValidationError);
}

TEST_CASE("disjointification") {
  CHECK(disjointify({}).empty());
  auto one = disjointify({{1, 2}});
  REQUIRE(one.size() == 1);
  CHECK(one[0].labels == std::vector<std::size_t>{0});
  CHECK(one[0].elements == std::vector<std::uint32_t>{1, 2});

  auto b = disjointify({{1, 2, 3}, {3, 4}});
  std::map<std::vector<std::size_t>, std::vector<std::uint32_t>> got;
  for (const auto& blk : b) got[blk.labels] = blk.elements;
  CHECK(got.size() == 3);
  CHECK(got[{0}] == std::vector<std::uint32_t>{1, 2});
  CHECK(got[{1}] == std::vector<std::uint32_t>{4});
  CHECK(got[{0, 1}] == std::vector<std::uint32_t>{3});

  auto same = disjointify({{5}, {5}});
  REQUIRE(same.size() == 1);
  CHECK(same[0].labels == std::vector<std::size_t>{0, 1});
}
