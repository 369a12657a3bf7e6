#include <doctest.h>

#include "fixtures.hpp"
#include "rswork/builders.hpp"
#include "rswork/dsl.hpp"
#include "rswork/error.hpp"

using namespace rswork;

namespace {

const std::vector<std::string> kFixtures{"arrow", "chain",  "covering", "cube", "diamond", "edge",
                                         "fab0",  "i2",     "i3",       "idem", "j2",      "loop1",
                                         "loops3", "monoid1", "nwindow", "path"};

// Line and column of the error raised by parsing src.
std::pair<std::size_t, std::size_t> error_at(const std::string& src, ErrorCode expected) {
  try {
    dsl::parse(src);
  } catch (const ParseError& e) {
    CHECK(e.code() == expected);
    return {e.line(), e.column()};
  }
  FAIL("no error for: " << src);
  return {0, 0};
}

}  // namespace

TEST_CASE("minimal monoid") {
  auto ws = dsl::parse("semigroup one { elements: 1; table: 1; projections: 1; }");
  auto S = dsl::build(ws.semigroup());
  CHECK(S.size() == 1);
  CHECK(S.mul(0, 0) == 0);
  CHECK(S.is_restriction());
}

TEST_CASE("I2 fixture") {
  auto S = fx::semigroup("i2");
  CHECK(S.size() == 7);
  CHECK(S.projections().size() == 4);
  auto ws = fx::load("i2");
  CHECK(ws.actions.size() == 1);
  CHECK(ws.action().semigroup.text == "I2");
}

TEST_CASE("comments and quoting") {
  auto ws = dsl::parse(
      "# leading comment\n"
      "semigroup \"two words\" {  # trailing\n"
      "  elements: \"semigroup\", \"a b\";\n"
      "  table: \"semigroup\" \"a b\", \"a b\" \"a b\";\n"
      "  projections: \"semigroup\", \"a b\";\n"
      "}\n");
  CHECK(ws.semigroup().name.text == "two words");
  auto S = dsl::build(ws.semigroup());
  CHECK(S.find("a b").has_value());
  CHECK(dsl::parse(dsl::pretty(ws)) == ws);
}

TEST_CASE("ragged table rows point at the row") {
  std::string src =
      "semigroup s {\n"
      "  elements: a, b;\n"
      "  table: a b,\n"
      "         b;\n"
      "  projections: a;\n"
      "}\n";
  auto [line, column] = error_at(src, ErrorCode::semantic);
  CHECK(line == 4);
  CHECK(column == 10);
}

TEST_CASE("unknown names and duplicates") {
  auto [l1, c1] = error_at("semigroup s { elements: a; table: b; projections: a; }", ErrorCode::semantic);
  CHECK(l1 == 1);
  CHECK(c1 == 35);
  auto [l2, c2] = error_at("semigroup s { elements: a, a; table: a a, a a; projections: a; }",
                           ErrorCode::semantic);
  CHECK(l2 == 1);
  CHECK(c2 == 28);
  error_at("action t on missing over {p} { }", ErrorCode::semantic);
}

TEST_CASE("syntax errors") {
  auto [l, c] = error_at("semigroup s {\n  elements a;\n}", ErrorCode::parse);
  CHECK(l == 2);
  CHECK(c == 12);
  error_at("semigroup s { elements: \"open; }", ErrorCode::parse);
  error_at("widget w { }", ErrorCode::parse);
}

TEST_CASE("structure maps may be given") {
  auto ws = dsl::parse(
      "semigroup z { elements: 1, e; table: 1 e, e e; projections: 1, e;\n"
      "  lambda: 1 -> 1, e -> e; rho: 1 -> 1, e -> e; }");
  auto S = dsl::build(ws.semigroup());
  CHECK(S.maps_supplied());
  CHECK(S.maps_match_derived());
  error_at("semigroup z { elements: 1, e; table: 1 e, e e; projections: 1, e; lambda: 1 -> 1; }",
           ErrorCode::semantic);
}

TEST_CASE("pretty printing round trips on every fixture") {
  for (const auto& name : kFixtures) {
    auto ws = fx::load(name);
    auto text = dsl::pretty(ws);
    auto again = dsl::parse(text);
    CHECK_MESSAGE(again == ws, name);
    CHECK_MESSAGE(dsl::pretty(again) == text, name);
  }
}

TEST_CASE("declare and build are inverse") {
  for (const auto& name : fx::all_semigroups()) {
    auto S = fx::semigroup(name);
    for (bool maps : {false, true}) {
      auto T = dsl::build(dsl::parse(dsl::pretty(dsl::Workspace{"", {dsl::declare(S, "S", maps)}})).semigroup());
      CHECK_MESSAGE(T.table() == S.table(), name);
      CHECK_MESSAGE(T.names() == S.names(), name);
      CHECK_MESSAGE(T.projections() == S.projections(), name);
      CHECK_MESSAGE(T.lambda_table() == S.lambda_table(), name);
    }
  }
  auto C = graph_category(dsl::build(fx::load("loops3").graph()), 2);
  auto D = dsl::build(dsl::declare(C, "C"));
  CHECK(D.morphism_names() == C.morphism_names());
  for (Mor a = 0; a < C.num_morphisms(); ++a)
    for (Mor b = 0; b < C.num_morphisms(); ++b) {
      CHECK(D.compose(a, b) == C.compose(a, b));
      CHECK(D.overflows(a, b) == C.overflows(a, b));
    }

  auto S = fx::semigroup("i2");
  auto a = dsl::build(fx::load("i2").action(), S);
  auto b = dsl::build(dsl::declare(a, S, "natural", "I2"), S);
  CHECK(a.theta == b.theta);
  CHECK(a.point_names == b.point_names);

  auto phi = dsl::build(fx::load("covering").covering(), fx::category("covering", "swap"),
                        fx::category("covering", "Z2"));
  auto psi = dsl::build(dsl::declare(phi, "phi", "swap", "Z2"), phi.source, phi.target);
  CHECK(psi.objects == phi.objects);
  CHECK(psi.morphisms == phi.morphisms);

  auto G = dsl::build(fx::load("path").category());
  CHECK(dsl::build(dsl::declare(G, "path")).morphism_names() == G.morphism_names());
}

TEST_CASE("implicit units") {
  auto ws = dsl::parse("category c { objects: u; morphisms: f: u -> u; compose f f = f; }");
  auto C = dsl::build(ws.category());
  CHECK(C.num_morphisms() == 2);
  CHECK(C.morphism_name(C.unit(0)) == "1_u");
  CHECK(validate_category(C).ok);
}

TEST_CASE("missing files") {
  CHECK_THROWS_AS(dsl::load("/nonexistent/file.rs-dsl"), Error);
}
