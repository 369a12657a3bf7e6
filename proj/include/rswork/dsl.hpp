#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rswork/cat.hpp"
#include "rswork/conv.hpp"
#include "rswork/rsem.hpp"
#include "rswork/spectrum.hpp"

namespace rswork::dsl {

// Source position. Positions never take part in equality, so a workspace
// compares equal to its pretty-printed and reparsed copy.
struct Loc {
  std::size_t line = 0;
  std::size_t column = 0;
  friend bool operator==(const Loc&, const Loc&) { return true; }
};

struct Name {
  std::string text;
  Loc loc;
  friend bool operator==(const Name&, const Name&) = default;
};

using Mapping = std::pair<Name, Name>;  // a -> b

struct SemigroupDecl {
  Name name;
  std::vector<Name> elements;
  std::vector<std::vector<Name>> table;
  std::vector<Loc> row_locs;
  std::vector<Name> projections;
  std::optional<std::vector<Mapping>> lambda;
  std::optional<std::vector<Mapping>> rho;
  friend bool operator==(const SemigroupDecl&, const SemigroupDecl&) = default;
};

struct EdgeDecl {
  Name name, from, to;
  friend bool operator==(const EdgeDecl&, const EdgeDecl&) = default;
};

struct GraphDecl {
  Name name;
  std::vector<Name> vertices;
  std::vector<EdgeDecl> edges;
  friend bool operator==(const GraphDecl&, const GraphDecl&) = default;
};

struct CompositionDecl {
  Name g, f, h;  // g f = h
  friend bool operator==(const CompositionDecl&, const CompositionDecl&) = default;
};

// Objects without an entry in units get an implicit identity named "1_<object>".
struct CategoryDecl {
  Name name;
  std::vector<Name> objects;
  std::vector<Mapping> units;  // object -> unit name
  std::vector<EdgeDecl> morphisms;
  std::vector<CompositionDecl> compositions;
  std::vector<std::pair<Name, Name>> overflow;
  friend bool operator==(const CategoryDecl&, const CategoryDecl&) = default;
};

struct ActionDecl {
  Name name;
  Name semigroup;
  std::vector<Name> points;
  std::vector<std::pair<Name, std::vector<Mapping>>> maps;
  std::vector<std::pair<Name, std::vector<Name>>> domains;  // e: identity on the set
  friend bool operator==(const ActionDecl&, const ActionDecl&) = default;
};

struct CoveringDecl {
  Name name;
  Name source, target;
  std::vector<Mapping> objects;
  std::vector<std::pair<Name, std::vector<Name>>> morphisms;
  friend bool operator==(const CoveringDecl&, const CoveringDecl&) = default;
};

struct Workspace {
  std::string file;
  std::vector<SemigroupDecl> semigroups;
  std::vector<GraphDecl> graphs;
  std::vector<CategoryDecl> categories;
  std::vector<ActionDecl> actions;
  std::vector<CoveringDecl> coverings;

  // The named block, or the first one of its kind when name is empty.
  const SemigroupDecl& semigroup(const std::string& name = "") const;
  const GraphDecl& graph(const std::string& name = "") const;
  const CategoryDecl& category(const std::string& name = "") const;
  const ActionDecl& action(const std::string& name = "") const;
  const CoveringDecl& covering(const std::string& name = "") const;

  friend bool operator==(const Workspace& a, const Workspace& b) {
    return a.semigroups == b.semigroups && a.graphs == b.graphs && a.categories == b.categories &&
           a.actions == b.actions && a.coverings == b.coverings;
  }
};

// Syntax and name resolution. Errors are ParseError with line and column;
// ErrorCode::semantic for unknown names, duplicates and ragged tables.
Workspace parse(const std::string& source, const std::string& file = "<input>");
Workspace load(const std::string& path);

std::string pretty(const Workspace& ws);

FinRS build(const SemigroupDecl& d);
Graph build(const GraphDecl& d);
FinCat build(const CategoryDecl& d);
EtaleAction build(const ActionDecl& d, const FinRS& S);
CoveringMorphism build(const CoveringDecl& d, std::shared_ptr<const FinCat> source,
                       std::shared_ptr<const FinCat> target);

SemigroupDecl declare(const FinRS& S, const std::string& name, bool with_maps = false);
GraphDecl declare(const Graph& G, const std::string& name);
CategoryDecl declare(const FinCat& C, const std::string& name);
ActionDecl declare(const EtaleAction& theta, const FinRS& S, const std::string& name,
                   const std::string& semigroup);
CoveringDecl declare(const CoveringMorphism& phi, const std::string& name,
                     const std::string& source, const std::string& target);

}  // namespace rswork::dsl
