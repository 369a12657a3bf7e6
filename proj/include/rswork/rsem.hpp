#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rswork/partial_map.hpp"

namespace rswork {

using Elem = std::uint32_t;

inline constexpr std::size_t kSemigroupGuard = 4096;

enum class Classification { restriction, ehresmann, left_restriction, none };
std::string to_string(Classification c);

struct AxiomWitness {
  int axiom = 0;  // 1..8
  std::vector<Elem> tuple;
};

struct AxiomReport {
  std::array<bool, 8> pass{};
  std::vector<AxiomWitness> witnesses;  // first counterexample per failing axiom
  Classification classification = Classification::none;

  bool ehresmann() const;
  bool left_restriction() const;
  bool restriction() const { return classification == Classification::restriction; }
};

struct StructureMaps {
  std::vector<Elem> lambda;
  std::vector<Elem> rho;
};

// Finite semigroup with a distinguished semilattice of projections and
// structure maps. Construction checks only structure (associativity, the
// projections form a commutative idempotent subsemigroup, lambda/rho land in
// it); the axioms are evaluated and cached in axioms().
//
// Multiplication: mul(s, t) is st, read as "s after t" for maps.
class FinRS {
 public:
  FinRS(std::size_t n, std::vector<Elem> table, std::vector<Elem> projections,
        std::optional<std::vector<Elem>> lambda = std::nullopt,
        std::optional<std::vector<Elem>> rho = std::nullopt, std::vector<std::string> names = {});

  std::size_t size() const { return _n; }
  Elem mul(Elem s, Elem t) const { return _table[std::size_t(s) * _n + t]; }
  Elem lambda(Elem s) const { return _lambda[s]; }
  Elem rho(Elem s) const { return _rho[s]; }
  bool is_projection(Elem s) const { return _is_projection[s]; }
  const std::vector<Elem>& projections() const { return _projections; }
  // e <= f in the semilattice of projections.
  bool leq_projection(Elem e, Elem f) const { return mul(e, f) == e; }

  std::optional<Elem> zero() const { return _zero; }
  bool zero_is_projection() const { return _zero && _is_projection[*_zero]; }

  const std::string& name(Elem s) const { return _names[s]; }
  const std::vector<std::string>& names() const { return _names; }
  std::optional<Elem> find(const std::string& name) const;

  const std::vector<Elem>& table() const { return _table; }
  const std::vector<Elem>& lambda_table() const { return _lambda; }
  const std::vector<Elem>& rho_table() const { return _rho; }

  const AxiomReport& axioms() const { return _axioms; }
  bool maps_supplied() const { return _maps_supplied; }
  bool maps_match_derived() const { return _maps_match_derived; }
  bool is_restriction() const { return _axioms.restriction(); }
  // Throws NotRestrictionError naming op unless all axioms hold.
  void require_restriction(const std::string& op) const;

 private:
  std::size_t _n;
  std::vector<Elem> _table;
  std::vector<Elem> _projections;
  std::vector<bool> _is_projection;
  std::vector<Elem> _lambda;
  std::vector<Elem> _rho;
  std::vector<std::string> _names;
  std::optional<Elem> _zero;
  bool _maps_supplied = false;
  bool _maps_match_derived = true;
  AxiomReport _axioms;
};

// lambda(s) = min{f : sf = s}, rho(s) = min{f : fs = s}. Throws
// NotRestrictionError naming an incomparable pair when a minimum is missing.
StructureMaps derive_structure_maps(std::size_t n, const std::vector<Elem>& table,
                                    const std::vector<Elem>& projections);

AxiomReport validate_axioms(const FinRS& S);

// s <= t; the four textbook characterizations are computed and must agree.
bool natural_leq(const FinRS& S, Elem s, Elem t);

struct AmpleReport {
  bool left = true;
  bool right = true;
  std::optional<std::array<Elem, 3>> left_witness;   // st = su, lambda(s)t != lambda(s)u
  std::optional<std::array<Elem, 3>> right_witness;  // ts = us, t rho(s) != u rho(s)
};
AmpleReport classify_ample(const FinRS& S);

// s -> s* when S is inverse with E(S) = E and lambda(s) = s*s, rho(s) = ss*.
std::optional<std::vector<Elem>> is_inverse(const FinRS& S);

struct WagnerPrestonReport {
  std::vector<PartialMap> phi;  // phi[s] on carrier S
  bool injective = true;        // s -> phi_s
  bool all_bijective = true;    // every phi_s injective on its domain
  std::optional<Elem> non_injective_witness;
};
// Requires the left-restriction axioms. Throws InternalError if
// phi_s phi_u != phi_su or s -> phi_s fails to be injective.
WagnerPrestonReport wagner_preston_embed(const FinRS& S);

struct RegularityReport {
  bool coincide = true;  // C_s == {y : rho(y) <= rho(s)} for all s
  std::optional<std::pair<Elem, Elem>> mismatch;
  std::optional<std::vector<Elem>> inverses;  // exhibited when coincide
  bool projection_inverses_exist = false;     // every s has an inverse s' with ss' in E
};
RegularityReport check_regularity_window(const FinRS& S);

struct IdentityReport {
  bool pass = true;
  std::string failed;
  std::vector<Elem> witness;
};
IdentityReport verify_identities(const FinRS& S);

}  // namespace rswork
