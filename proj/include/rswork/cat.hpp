#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "rswork/rsem.hpp"

namespace rswork {

using Obj = std::uint32_t;
using Mor = std::uint32_t;

inline constexpr std::size_t kBisectionGuard = 20;

// Finite category, or a finite window of an infinite one: pairs listed in
// overflow() are composable but their product lies outside the window.
class FinCat {
 public:
  class Builder;

  std::size_t num_objects() const { return _object_names.size(); }
  std::size_t num_morphisms() const { return _d.size(); }
  Obj d(Mor x) const { return _d[x]; }
  Obj r(Mor x) const { return _r[x]; }
  Mor unit(Obj u) const { return _unit[u]; }
  bool is_unit(Mor x) const { return _unit[_d[x]] == x; }
  bool composable(Mor a, Mor b) const { return _d[a] == _r[b]; }
  // ab when it lies in the window.
  std::optional<Mor> compose(Mor a, Mor b) const;
  bool overflows(Mor a, Mor b) const;
  bool truncated() const { return !_overflow.empty(); }
  const std::vector<std::pair<Mor, Mor>>& overflow() const { return _overflow; }

  // All (x, y) with xy = z.
  const std::vector<std::pair<Mor, Mor>>& factorizations(Mor z) const { return _factor[z]; }
  // Morphisms with d = u, resp. r = u.
  const std::vector<Mor>& with_source(Obj u) const { return _with_d[u]; }
  const std::vector<Mor>& with_range(Obj u) const { return _with_r[u]; }

  const std::string& object_name(Obj u) const { return _object_names[u]; }
  const std::string& morphism_name(Mor x) const { return _morphism_names[x]; }
  const std::vector<std::string>& morphism_names() const { return _morphism_names; }
  const std::vector<std::string>& object_names() const { return _object_names; }
  std::optional<Mor> find_morphism(const std::string& name) const;
  std::optional<Obj> find_object(const std::string& name) const;

  // Raw composition table for tests that corrupt it deliberately.
  void override_composition(Mor a, Mor b, Mor c);

 private:
  static std::uint64_t key(Mor a, Mor b) { return (std::uint64_t(a) << 32) | b; }
  void index();

  std::vector<std::string> _object_names;
  std::vector<std::string> _morphism_names;
  std::vector<Obj> _d, _r;
  std::vector<Mor> _unit;
  std::unordered_map<std::uint64_t, Mor> _comp;
  std::vector<std::pair<Mor, Mor>> _overflow;
  std::unordered_map<std::uint64_t, bool> _overflow_set;
  std::vector<std::vector<std::pair<Mor, Mor>>> _factor;
  std::vector<std::vector<Mor>> _with_d, _with_r;
};

class FinCat::Builder {
 public:
  Obj add_object(const std::string& name);
  Mor add_morphism(const std::string& name, Obj d, Obj r);
  // Adds an identity morphism for u with unit laws filled in at build().
  Mor add_unit(Obj u, const std::string& name);
  void set_composition(Mor a, Mor b, Mor c);
  void add_overflow(Mor a, Mor b);
  std::size_t num_morphisms() const { return _cat._d.size(); }
  // Structural checks only: ranges, units present. Laws: validate_category.
  FinCat build();

 private:
  FinCat _cat;
  std::vector<std::optional<Mor>> _units;
};

struct LawViolation {
  std::string law;
  std::vector<Mor> witness;
};

struct CategoryReport {
  bool ok = true;
  std::vector<LawViolation> violations;  // first witness per law
  std::size_t skipped_triples = 0;       // associativity triples leaving the window
};
CategoryReport validate_category(const FinCat& C);

using Bisection = std::vector<Mor>;  // sorted

bool is_bisection(const FinCat& C, const Bisection& U);
// All bisections, sorted by size then lexicographically. Guard |C1| <= 20.
std::vector<Bisection> enumerate_bisections(const FinCat& C);

struct BisSemigroup {
  std::vector<Bisection> bisections;  // element i of S
  FinRS S;
  std::optional<Elem> find(const Bisection& U) const;
};
// Bis(C) with lambda(U) = d(U), rho(U) = r(U). Refuses truncated categories.
BisSemigroup bis_semigroup(const FinCat& C);
Bisection bisection_product(const FinCat& C, const Bisection& U, const Bisection& V);

struct CancellationReport {
  bool holds = true;
  std::optional<std::array<Mor, 3>> witness;  // (x, y, w): xy = xw (left) or yx = wx (right)
  std::size_t skipped_pairs = 0;
};
CancellationReport is_left_cancellative(const FinCat& C);
CancellationReport is_right_cancellative(const FinCat& C);
bool is_cancellative(const FinCat& C);

// Inverse table when C is a groupoid.
std::optional<std::vector<Mor>> groupoid_inverses(const FinCat& C);
bool is_groupoid(const FinCat& C);

struct Graph {
  std::vector<std::string> vertices;
  struct Edge {
    std::string name;
    std::uint32_t source;  // d
    std::uint32_t target;  // r
  };
  std::vector<Edge> edges;
};

// Paths of length <= N. a1...an has d = d(an), r = r(a1); composition is
// concatenation. Path names join edge names with '.'.
FinCat graph_category(const Graph& G, std::size_t N);

// Morphisms (y, n, x) with f^n(x) = y and n <= N.
FinCat transformation_category(const std::vector<std::string>& points,
                               const std::vector<std::uint32_t>& f, std::size_t N);

// Objects E, morphisms S, d = lambda, r = rho, st defined iff lambda(s) = rho(t).
FinCat category_of_semigroup(const FinRS& S);

// {0, 1, ..., K} under multiplication as a one-object window.
FinCat multiplicative_window(std::size_t K);

}  // namespace rswork
