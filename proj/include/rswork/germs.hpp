#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rswork/cat.hpp"
#include "rswork/error.hpp"
#include "rswork/scalar.hpp"
#include "rswork/spectrum.hpp"

namespace rswork {

inline constexpr std::size_t kReconstructionGuard = 12;

struct ActionReport {
  bool ok = true;
  std::string failed;
  std::vector<std::uint32_t> witness;
};
// theta_s theta_t = theta_st, theta_e = id on D_e, theta_s : D_lambda(s) -> D_rho(s)
// bijective, and the domains D_e cover the set.
ActionReport validate_action(const FinRS& S, const EtaleAction& theta);

struct Germ {
  Elem s;
  Point x;
  friend bool operator==(const Germ&, const Germ&) = default;
  friend auto operator<=>(const Germ&, const Germ&) = default;
};

// Category of germs [s, x], x in D_lambda(s); objects are the points.
class GermTable {
 public:
  const FinCat& category() const { return *_cat; }
  std::shared_ptr<const FinCat> category_ptr() const { return _cat; }
  std::size_t num_classes() const { return _members.size(); }
  // Lexicographically least (s, x) in the class.
  const Germ& representative(Mor c) const { return _members[c].front(); }
  const std::vector<Germ>& members(Mor c) const { return _members[c]; }
  std::optional<Mor> class_of(Elem s, Point x) const;
  // Theta_s = {[s, x] : x in D_lambda(s)}.
  std::vector<Mor> theta_set(Elem s) const;

 private:
  friend GermTable germ_category(const FinRS&, const EtaleAction&);
  std::shared_ptr<const FinCat> _cat;
  std::vector<std::vector<Germ>> _members;
  std::vector<std::vector<std::optional<Mor>>> _class;  // [s][x]
};

// f in E with sf = tf and x in D_f, if any.
std::optional<Elem> germ_witness(const FinRS& S, const EtaleAction& theta, Elem s, Elem t, Point x);

// Validates the action first (ValidationError otherwise). Asserts that the
// relation is already transitive, that units do not depend on the chosen
// projection, and that composition is independent of representatives.
GermTable germ_category(const FinRS& S, const EtaleAction& theta);

struct STildeReport {
  std::vector<Mor> psi;  // psi[s] = [s, principal at lambda(s)]
  bool injective = true;
  bool is_full_preimage = true;   // equals r^-1(principal) cap d^-1(principal)
  bool closed_under_left = true;  // [s, phi] with phi principal composes back into it
  bool functor_iso = true;        // onto C_S
  bool equals_whole = true;       // always true for finite E
  bool restriction_identity = true;  // [s, principal e] = [se, principal lambda(se)]
};
STildeReport s_tilde(const FinRS& S, const CanonicalAction& can, const GermTable& G);
STildeReport s_tilde(const FinRS& S);

struct AmpleCancellativeReport {
  bool left_ample = false;
  bool left_cancellative = false;
  bool consistent = false;  // iff for the canonical action, forward only otherwise
  std::optional<std::array<Mor, 3>> witness;
};
AmpleCancellativeReport check_ample_cancellative(const FinRS& S);
AmpleCancellativeReport check_ample_cancellative(const FinRS& S, const EtaleAction& theta);

struct ReconstructionReport {
  std::size_t bisections = 0;
  std::size_t germ_morphisms = 0;
  bool bijective = false;
  bool preserves_ends = false;
  bool preserves_units = false;
  bool preserves_composition = false;
  bool ok() const { return bijective && preserves_ends && preserves_units && preserves_composition; }
};
// Germ category of Bis(D) acting on D0 compared with D via [U, x] -> d_U^-1(x).
ReconstructionReport bis_germ_reconstruction(const FinCat& D);

// Bis(D) acting on objects by theta_U = r_U d_U^-1.
EtaleAction bisection_action(const FinCat& D, const BisSemigroup& bis);

// alpha_s(f) = f o zeta_s on functions supported in D_lambda(s).
class AlgebraAction {
 public:
  AlgebraAction(const FinRS& S, const EtaleAction& theta) : _S(&S), _theta(&theta) {
    for (const auto& t : theta.theta) _inverse.push_back(t.inverse());
  }
  const FinRS& semigroup() const { return *_S; }
  const EtaleAction& action() const { return *_theta; }
  std::size_t points() const { return _theta->carrier(); }
  const PartialMap& zeta(Elem s) const { return _inverse[s]; }

  template <class Scalar>
  Vector<Scalar> indicator(Elem e) const {
    Vector<Scalar> v = Vector<Scalar>::Zero(points());
    for (Point x : _theta->domain(e)) v[x] = Scalar(1);
    return v;
  }

  template <class Scalar>
  bool supported_in(const Vector<Scalar>& f, Elem e) const {
    const auto& dom = _theta->theta[e];
    for (Point x = 0; x < points(); ++x)
      if (!ScalarTraits<Scalar>::is_zero(f[x]) && !dom.defined(x)) return false;
    return true;
  }

  template <class Scalar>
  Vector<Scalar> apply(Elem s, const Vector<Scalar>& f) const {
    if (!supported_in(f, _S->lambda(s)))
      throw ValidationError("alpha_s applied outside D_lambda(s)");
    Vector<Scalar> g = Vector<Scalar>::Zero(points());
    const auto& th = _theta->theta[s];
    for (Point x = 0; x < points(); ++x)
      if (th.defined(x)) g[th.at(x)] = f[x];
    return g;
  }

  template <class Scalar>
  Vector<Scalar> apply_inverse(Elem s, const Vector<Scalar>& f) const {
    if (!supported_in(f, _S->rho(s)))
      throw ValidationError("alpha_s^-1 applied outside D_rho(s)");
    Vector<Scalar> g = Vector<Scalar>::Zero(points());
    const auto& th = _theta->theta[s];
    for (Point x = 0; x < points(); ++x)
      if (th.defined(x)) g[x] = f[th.at(x)];
    return g;
  }

 private:
  const FinRS* _S;
  const EtaleAction* _theta;
  std::vector<PartialMap> _inverse;
};

inline AlgebraAction induced_algebra_action(const FinRS& S, const EtaleAction& theta) {
  return AlgebraAction(S, theta);
}

}  // namespace rswork
