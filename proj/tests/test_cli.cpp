#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <sys/wait.h>

#include "fixtures.hpp"
#include "rswork/cli.hpp"

using json = nlohmann::json;
namespace cli = rswork::cli;

namespace {

struct Result {
  int code;
  std::string text;
  json j;
};

Result run(std::vector<std::string> args) {
  std::ostringstream os;
  int code = cli::run(args, os);
  Result r{code, os.str(), json()};
  if (args.empty() || args[0] != "pretty") r.j = json::parse(r.text);
  return r;
}

std::string fx_path(const std::string& name) { return fx::path(name); }

}  // namespace

TEST_CASE("check on a restriction semigroup") {
  auto r = run({"check", fx_path("i2")});
  CHECK(r.code == cli::kPass);
  CHECK(r.j["classification"] == "restriction");
  CHECK(r.j["inverse"] == true);
  CHECK(r.j["ample"]["left"] == true);
  CHECK(r.j["size"] == 7);
}

TEST_CASE("check reports the failing axiom with a witness") {
  auto r = run({"check", fx_path("j2")});
  CHECK(r.code == cli::kPass);  // classification is data
  CHECK(r.j["axioms"]["P8"] == false);
  CHECK(r.j["classification"] == "ehresmann");
  REQUIRE(r.j["witnesses"].size() == 1);
  CHECK(r.j["witnesses"][0]["tuple"][0] == "const_a");

  auto e = run({"check", fx_path("j2"), "--expect", "restriction"});
  CHECK(e.code == cli::kAssertionFailure);
  CHECK(e.j["pass"] == false);
}

TEST_CASE("spectrum and tight") {
  auto s = run({"spectrum", fx_path("diamond")});
  CHECK(s.code == cli::kPass);
  CHECK(s.j["characters"].size() == 4);
  CHECK(s.j["principal_equals_all"] == true);
  CHECK(s.j["brute_force_agrees"] == true);

  auto t = run({"tight", fx_path("diamond")});
  CHECK(t.code == cli::kPass);
  CHECK(t.j["tight"] == json::array({"ς_e", "ς_f"}));
  CHECK(t.j["invariance_checked"] == true);

  // the unit of the trivial monoid is also its zero
  auto m = run({"tight", fx_path("monoid1")});
  CHECK(m.code == cli::kPass);
  CHECK(m.j["tight"].empty());
}

TEST_CASE("germs of Fab0") {
  auto r = run({"germs", fx_path("fab0")});
  CHECK(r.code == cli::kPass);
  CHECK(r.j["classes"].size() == 5);
  CHECK(r.j["left_ample"] == false);
  CHECK(r.j["left_cancellative"] == false);
  CHECK(r.j["consistent"] == true);
  CHECK(r.j["witness"][0] == "[const_a,ς_1]");

  auto n = run({"germs", fx_path("i2"), "--action", "natural"});
  CHECK(n.code == cli::kPass);
  CHECK(n.j["classes"].size() == 4);
}

TEST_CASE("bisections with reconstruction") {
  auto r = run({"bisections", fx_path("covering"), "--category", "swap"});
  CHECK(r.code == cli::kPass);
  CHECK(r.j["bisections"].size() == 7);
  auto g = run({"bisections", fx_path("loop1"), "--graph", "loop1", "--truncate", "3"});
  CHECK(g.code == cli::kPass);
  CHECK(g.j["bisections"].size() == 5);
}

TEST_CASE("conv") {
  auto r = run({"conv", fx_path("covering"), "--category", "swap", "--expr", "s_p*s_q + 2i \"1_p\""});
  CHECK(r.code == cli::kPass);
  CHECK(r.j["result"]["1_q"][0] == 1.0);
  CHECK(r.j["result"]["1_p"][1] == 2.0);
  CHECK(r.j["on_bisection"] == true);

  auto s = run({"conv", fx_path("covering"), "--category", "swap", "--expr", "star(2i s_p)"});
  CHECK(s.j["result"]["s_q"][1] == -2.0);

  // names starting with a digit need quotes
  CHECK(run({"conv", fx_path("covering"), "--category", "swap", "--expr", "1_p"}).code == cli::kInputError);
  auto bad = run({"conv", fx_path("covering"), "--category", "swap", "--expr", "s_p +"});
  CHECK(bad.code == cli::kInputError);
}

TEST_CASE("norm") {
  auto r = run({"norm", fx_path("loops3"), "--poly", "x1+x2+x3", "--graph", "loops3", "--truncate", "3"});
  CHECK(r.code == cli::kPass);
  CHECK(std::abs(r.j["value"].get<double>() - std::sqrt(3.0)) < 1e-9);
  CHECK(r.j["dimension"] == 40);
  CHECK(r.j["all_ones_value"] == 3.0);

  auto f = run({"norm", "--poly", "1 + x", "--fock", "1", "--truncate", "64"});
  CHECK(f.code == cli::kPass);
  CHECK(f.j["value"].get<double>() <= f.j["unit_circle_sup"].get<double>() + 1e-8);

  auto n = run({"norm", fx_path("nwindow"), "--expr", "\"0\""});
  CHECK(n.code == cli::kPass);
  CHECK(n.j["left_cancellative"] == false);
  CHECK(n.j["value"].get<double>() >= std::sqrt(2.0) - 1e-9);
}

TEST_CASE("norm writes the matrix") {
  auto path = std::string("test_cli_matrix.bin");
  auto r = run({"norm", "--poly", "x", "--fock", "1", "--truncate", "3", "--out", path});
  CHECK(r.code == cli::kPass);
  std::ifstream in(path, std::ios::binary);
  std::uint64_t rows = 0, cols = 0;
  in.read(reinterpret_cast<char*>(&rows), 8);
  in.read(reinterpret_cast<char*>(&cols), 8);
  CHECK(rows == 4);
  CHECK(cols == 4);
  std::remove(path.c_str());
}

TEST_CASE("semicrossed, embed and covering checks") {
  auto s = run({"semicrossed-check", fx_path("i2"), "--seed", "5", "--samples", "5"});
  CHECK(s.code == cli::kPass);
  CHECK(s.j["pass"] == true);

  auto e = run({"embed", fx_path("i2")});
  CHECK(e.code == cli::kPass);
  CHECK(e.j["injective"] == true);
  CHECK(e.j["all_bijective"] == true);

  auto c = run({"cover-check", fx_path("covering")});
  CHECK(c.code == cli::kPass);
  CHECK(c.j["pass"] == true);
}

TEST_CASE("pretty output reparses") {
  auto r = run({"pretty", fx_path("i2")});
  CHECK(r.code == cli::kPass);
  CHECK(rswork::dsl::parse(r.text) == fx::load("i2"));
}

TEST_CASE("input errors carry a position") {
  std::string path = "test_cli_ragged.rs-dsl";
  {
    std::ofstream out(path);
    out << "semigroup s {\n  elements: a, b;\n  table: a b,\n         b;\n  projections: a;\n}\n";
  }
  auto r = run({"check", path});
  CHECK(r.code == cli::kInputError);
  CHECK(r.j["error"]["code"] == "semantic");
  CHECK(r.j["error"]["line"] == 4);
  CHECK(r.j["error"]["column"] == 10);
  std::remove(path.c_str());

  CHECK(run({"check", "/nonexistent.rs-dsl"}).code == cli::kInputError);
  CHECK(run({}).code == cli::kInputError);
}

TEST_CASE("the installed binary uses the same exit codes") {
  std::string cmd = std::string(RSWORK_CLI) + " check " + fx_path("j2") + " --expect restriction > /dev/null";
  int status = std::system(cmd.c_str());
  REQUIRE(WIFEXITED(status));
  CHECK(WEXITSTATUS(status) == cli::kAssertionFailure);
  cmd = std::string(RSWORK_CLI) + " check " + fx_path("i2") + " > /dev/null";
  status = std::system(cmd.c_str());
  CHECK(WEXITSTATUS(status) == cli::kPass);
}
