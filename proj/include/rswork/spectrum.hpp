#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rswork/partial_map.hpp"
#include "rswork/rsem.hpp"

namespace rswork {

inline constexpr std::size_t kCharacterGuard = 24;
inline constexpr std::size_t kBruteForceCrossCheck = 16;
inline constexpr std::size_t kCoverGuard = 16;

// Finite meet-semilattice on indices 0..k-1. When taken from a FinRS, index i
// stands for the i-th projection of S.
class Semilattice {
 public:
  explicit Semilattice(const FinRS& S);
  Semilattice(std::vector<std::string> names, std::vector<std::uint32_t> meet);

  std::size_t size() const { return _k; }
  std::uint32_t meet(std::uint32_t a, std::uint32_t b) const { return _meet[a * _k + b]; }
  bool leq(std::uint32_t a, std::uint32_t b) const { return meet(a, b) == a; }
  std::optional<std::uint32_t> zero() const { return _zero; }
  const std::string& name(std::uint32_t a) const { return _names[a]; }
  const std::vector<std::string>& names() const { return _names; }
  // Element of the parent semigroup, if any.
  Elem element(std::uint32_t a) const { return _elements.at(a); }
  std::optional<std::uint32_t> index_of(Elem e) const;

 private:
  std::size_t _k;
  std::vector<std::uint32_t> _meet;
  std::vector<std::string> _names;
  std::vector<Elem> _elements;
  std::optional<std::uint32_t> _zero;
};

// Nonzero multiplicative map E -> {0, 1}, bit i is the value at index i.
struct Character {
  std::uint64_t bits = 0;
  bool operator()(std::uint32_t i) const { return (bits >> i) & 1u; }
  friend bool operator==(Character, Character) = default;
  friend auto operator<=>(Character, Character) = default;
};

std::string bitstring(const Semilattice& E, Character phi);

// Characters via enumeration of the nonempty filters; cross-checked against
// brute force over all 0/1 maps when |E| <= 16. Sorted by the meet of the
// support, then by bits.
std::vector<Character> enumerate_characters(const Semilattice& E);
std::vector<Character> brute_force_characters(const Semilattice& E);

// 1 on e and everything above it.
Character principal_character(const Semilattice& E, std::uint32_t e);
// Index of the meet of the support, used for labels.
std::uint32_t support_meet(const Semilattice& E, Character phi);
std::string label(const Semilattice& E, Character phi);

using PointSet = std::vector<bool>;

// Action of S by partial bijections of a finite set. theta[s] is defined on
// D_{lambda(s)} and D_e is the domain of theta[e].
struct EtaleAction {
  std::vector<std::string> point_names;
  std::vector<PartialMap> theta;

  std::size_t carrier() const { return point_names.size(); }
  std::vector<Point> domain(Elem e) const { return theta.at(e).domain(); }
};

struct CanonicalAction {
  Semilattice E;
  std::vector<Character> characters;
  EtaleAction action;            // on the characters
  std::vector<PartialMap> zeta;  // inverse maps D_rho(s) -> D_lambda(s)

  std::optional<Point> index_of(Character phi) const;
  Point principal(Elem e) const;  // index of the principal character at a projection
};

// theta_s(phi)(f) = phi(lambda(fs)) and zeta_s(phi)(f) = phi(rho(sf)); the
// semigroup laws and mutual inversion are asserted.
CanonicalAction canonical_action(const FinRS& S);

// Z covers x: every nonzero y <= x meets some z in Z. Requires a zero.
bool is_cover(const Semilattice& E, const std::vector<std::uint32_t>& Z, std::uint32_t x);

// Z_s = {lambda(zs)}; asserted to cover lambda(xs). Indices are elements of S.
std::vector<Elem> push_cover(const FinRS& S, const std::vector<Elem>& Z, Elem x, Elem s);

struct TightReport {
  std::vector<Character> tight;
  bool invariance_checked = false;
};
// Requires 0 in E. Exhaustive over covers of each x, guarded |x down| <= 16.
TightReport tight_spectrum(const Semilattice& E);
// Also asserts invariance of the tight set under the canonical action.
TightReport tight_spectrum(const FinRS& S);

}  // namespace rswork
