// Regenerates the table-heavy fixtures from the builders:
//   make_fixtures <fixture dir>
#include <fstream>
#include <iostream>

#include "rswork/builders.hpp"
#include "rswork/cat.hpp"
#include "rswork/dsl.hpp"

using namespace rswork;

namespace {

void write(const std::string& dir, const std::string& file, const dsl::Workspace& ws,
           const std::string& header) {
  std::ofstream os(dir + "/" + file);
  os << header << "\n" << dsl::pretty(ws);
}

dsl::Workspace semigroup_ws(const FinRS& S, const std::string& name) {
  dsl::Workspace ws;
  ws.semigroups.push_back(dsl::declare(S, name));
  return ws;
}

dsl::Workspace category_ws(const FinCat& C, const std::string& name) {
  dsl::Workspace ws;
  ws.categories.push_back(dsl::declare(C, name));
  return ws;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: make_fixtures <dir>\n";
    return 2;
  }
  std::string dir = argv[1];
  {
    // I2 together with its defining action on {1, 2}: s maps x to y iff
    // rho(s e_x) = e_y, defined when s e_x != 0.
    auto S = symmetric_inverse_monoid({"1", "2"});
    auto ws = semigroup_ws(S, "I2");
    EtaleAction nat{{"1", "2"}, std::vector<PartialMap>(S.size(), PartialMap(2))};
    const Elem zero = *S.find("0");
    const Elem e[2] = {*S.find("e1"), *S.find("e2")};
    for (Elem s = 0; s < S.size(); ++s)
      for (Point x = 0; x < 2; ++x) {
        Elem se = S.mul(s, e[x]);
        if (se == zero) continue;
        nat.theta[s].set(x, S.rho(se) == e[0] ? 0 : 1);
      }
    ws.actions.push_back(dsl::declare(nat, S, "natural", "I2"));
    write(dir, "i2.rs-dsl", ws, "# Partial bijections of {1, 2} and their action on {1, 2}.");
  }
  write(dir, "i3.rs-dsl", semigroup_ws(symmetric_inverse_monoid({"1", "2", "3"}), "I3"),
        "# Partial bijections of {1, 2, 3}.");
  write(dir, "j2.rs-dsl", semigroup_ws(partial_surjection_monoid({"a", "b"}), "J2"),
        "# Partial surjections of {a, b}. Not a restriction semigroup.");
  write(dir, "fab0.rs-dsl", semigroup_ws(full_transformation_with_zero({"a", "b"}), "Fab0"),
        "# Self-maps of {a, b} with a zero adjoined; E = {0, 1}.");
  write(dir, "diamond.rs-dsl", semigroup_ws(semilattice({"1", "e", "f", "0"}, {0, 1, 2, 3, 1, 1, 3, 3, 2, 3, 2, 3, 3, 3, 3, 3}), "diamond"),
        "# {1, e, f, 0} with ef = 0.");
  write(dir, "chain.rs-dsl", semigroup_ws(semilattice({"1", "e", "0"}, {0, 1, 2, 1, 1, 2, 2, 2, 2}), "chain"),
        "# The chain 0 < e < 1.");
  write(dir, "cube.rs-dsl", semigroup_ws(subset_semilattice(3), "cube"),
        "# Subsets of a 3-element set under intersection.");

  Graph edge{{"u", "v"}, {{"a", 0, 1}}};
  write(dir, "arrow.rs-dsl", category_ws(graph_category(edge, 1), "arrow"),
        "# Path category of u -a-> v.");
  Graph path{{"u", "v", "w"}, {{"a", 0, 1}, {"b", 1, 2}}};
  write(dir, "path.rs-dsl", category_ws(graph_category(path, 2), "path"),
        "# Path category of u -a-> v -b-> w.");
  write(dir, "nwindow.rs-dsl", category_ws(multiplicative_window(4), "N4"),
        "# {0, 1, ..., 4} under multiplication, a truncated one-object window.");
  return 0;
}
