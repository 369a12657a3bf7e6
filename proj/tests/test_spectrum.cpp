#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "rswork/builders.hpp"
#include "rswork/error.hpp"
#include "rswork/spectrum.hpp"

using namespace rswork;

namespace {

std::set<std::uint64_t> bits(const std::vector<Character>& v) {
  std::set<std::uint64_t> out;
  for (auto c : v) out.insert(c.bits);
  return out;
}

std::vector<std::string> labels(const Semilattice& E, const std::vector<Character>& v) {
  std::vector<std::string> out;
  for (auto c : v) out.push_back(label(E, c));
  return out;
}

}  // namespace

TEST_CASE("one-element semilattice has one character") {
  Semilattice E({"1"}, {0});
  auto c = enumerate_characters(E);
  REQUIRE(c.size() == 1);
  CHECK(label(E, c[0]) == "ς_1");
}

TEST_CASE("diamond characters are the four principal ones") {
  Semilattice E(fx::semigroup("diamond"));
  auto c = enumerate_characters(E);
  CHECK(bits(c) == oracle::characters(E.size(), oracle::meet_table(E)));
  auto l = labels(E, c);
  std::sort(l.begin(), l.end());
  CHECK(l == std::vector<std::string>{"ς_0", "ς_1", "ς_e", "ς_f"});
}

TEST_CASE("finite E: characters are exactly the principal characters") {
  for (const auto& name : fx::all_semigroups()) {
    Semilattice E(fx::semigroup(name));
    auto c = enumerate_characters(E);
    std::set<std::uint64_t> principal;
    for (std::uint32_t e = 0; e < E.size(); ++e) principal.insert(principal_character(E, e).bits);
    CHECK_MESSAGE(bits(c) == principal, name);
    CHECK_MESSAGE(bits(c) == oracle::characters(E.size(), oracle::meet_table(E)), name);
  }
}

TEST_CASE("principal characters") {
  Semilattice E(fx::semigroup("diamond"));
  auto top = *E.index_of(*fx::semigroup("diamond").find("1"));
  CHECK(principal_character(E, top).bits == 1u << top);
  for (std::uint32_t e = 0; e < E.size(); ++e) {
    auto c = principal_character(E, e);
    for (std::uint32_t f = 0; f < E.size(); ++f) CHECK(c(f) == E.leq(e, f));
    for (std::uint32_t f = 0; f < E.size(); ++f)
      if (principal_character(E, f) == c) CHECK(f == e);
  }
}

TEST_CASE("larger semilattices agree with brute force") {
  auto S = subset_semilattice(4);
  Semilattice E(S);
  CHECK(bits(enumerate_characters(E)) == oracle::characters(E.size(), oracle::meet_table(E)));
  CHECK(enumerate_characters(E).size() == 16);
}

TEST_CASE("character guard") {
  std::vector<std::string> names;
  std::vector<std::uint32_t> meet;
  const std::uint32_t k = 30;  // a chain
  for (std::uint32_t i = 0; i < k; ++i) names.push_back("c" + std::to_string(i));
  for (std::uint32_t a = 0; a < k; ++a)
    for (std::uint32_t b = 0; b < k; ++b) meet.push_back(std::max(a, b));
  Semilattice E(names, meet);
  CHECK_THROWS_AS(enumerate_characters(E), SizeError);
}

TEST_CASE("canonical action sends the principal character at lambda(t) to rho(t)") {
  for (const auto& name : fx::restriction_semigroups()) {
    auto S = fx::semigroup(name);
    auto can = canonical_action(S);
    for (Elem t = 0; t < S.size(); ++t)
      CHECK(can.action.theta[t].at(can.principal(S.lambda(t))) == can.principal(S.rho(t)));
    for (Elem e : S.projections()) CHECK(can.action.theta[e].is_identity_on_domain());
  }
}

TEST_CASE("canonical action of I2 evaluated directly") {
  auto S = fx::semigroup("i2");
  auto can = canonical_action(S);
  const auto& E = can.E;
  for (Elem s = 0; s < S.size(); ++s)
    for (Point p = 0; p < can.characters.size(); ++p) {
      auto phi = can.characters[p];
      bool in = phi(*E.index_of(S.lambda(s)));
      REQUIRE(can.action.theta[s].defined(p) == in);
      if (!in) continue;
      // phi(lambda(f s)) for every f in E
      std::uint64_t expect = 0;
      for (std::uint32_t f = 0; f < E.size(); ++f)
        if (phi(*E.index_of(S.lambda(S.mul(E.element(f), s))))) expect |= std::uint64_t(1) << f;
      CHECK(can.characters[can.action.theta[s].at(p)].bits == expect);
    }
}

TEST_CASE("covers") {
  auto S = fx::semigroup("diamond");
  Semilattice E(S);
  auto i = [&](const char* n) { return *E.index_of(*S.find(n)); };
  CHECK(is_cover(E, {i("e")}, i("e")));
  CHECK(is_cover(E, {i("e"), i("f")}, i("1")));
  CHECK_FALSE(is_cover(E, {i("e")}, i("1")));
  CHECK_FALSE(is_cover(E, {}, i("1")));
}

TEST_CASE("pushed covers stay covers") {
  auto S = fx::semigroup("i2");
  Semilattice E(S);
  std::mt19937_64 rng(7);
  std::vector<Elem> P = S.projections();
  Elem zero = *S.zero();
  int checked = 0;
  for (int k = 0; k < 500; ++k) {
    Elem x = P[rng() % P.size()];
    if (x == zero) continue;
    std::vector<Elem> Z;
    for (Elem e : P)
      if (e != zero && S.leq_projection(e, x) && rng() % 2) Z.push_back(e);
    std::vector<std::uint32_t> zi;
    for (Elem z : Z) zi.push_back(*E.index_of(z));
    if (!is_cover(E, zi, *E.index_of(x))) continue;
    Elem s = Elem(rng() % S.size());
    if (S.mul(x, s) == zero) continue;
    auto Zs = push_cover(S, Z, x, s);
    std::vector<std::uint32_t> zsi;
    for (Elem z : Zs)
      if (z != zero) zsi.push_back(*E.index_of(z));
    CHECK(is_cover(E, zsi, *E.index_of(S.lambda(S.mul(x, s)))));
    ++checked;
  }
  CHECK(checked > 20);
}

TEST_CASE("tight spectrum of the two-element chain") {
  Semilattice E({"1", "0"}, {0, 1, 1, 1});
  auto t = tight_spectrum(E);
  REQUIRE(t.tight.size() == 1);
  CHECK(label(E, t.tight[0]) == "ς_1");
}

TEST_CASE("tight spectrum of the diamond") {
  auto S = fx::semigroup("diamond");
  Semilattice E(S);
  auto t = tight_spectrum(S);
  CHECK(t.invariance_checked);
  CHECK(labels(E, t.tight) == std::vector<std::string>{"ς_e", "ς_f"});
  CHECK(bits(t.tight) == oracle::tight_characters(E.size(), oracle::meet_table(E), *E.zero()));
}

TEST_CASE("tight spectra agree with the definition on every fixture with a zero") {
  for (const auto& name : fx::restriction_semigroups()) {
    auto S = fx::semigroup(name);
    Semilattice E(S);
    if (!E.zero()) {
      CHECK_THROWS_AS(tight_spectrum(S), UnsupportedError);
      continue;
    }
    auto t = tight_spectrum(S);
    CHECK_MESSAGE(bits(t.tight) == oracle::tight_characters(E.size(), oracle::meet_table(E), *E.zero()), name);
  }
}
