#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "rswork/conv.hpp"
#include "rswork/polynomial.hpp"
#include "rswork/scalar.hpp"
#include "rswork/spectrum.hpp"

namespace rswork {

inline constexpr std::size_t kDenseNormLimit = 2000;
inline constexpr std::size_t kRegularRepEntryGuard = 1000000;
inline constexpr std::size_t kFockDimensionGuard = 1000000;

template <class Scalar>
struct LinOp {
  std::vector<std::string> basis;
  Matrix<Scalar> matrix;
};

struct NormReport {
  double value = 0;
  std::string method;  // "svd" or "power"
  double tol = 0;
  std::size_t iterations = 0;
};

// Largest singular value. Dense SVD up to kDenseNormLimit, power iteration on
// A*A beyond. NonConvergenceError carries the last estimate and a bracket.
NormReport operator_norm(const Eigen::MatrixXcd& A, double tol = 1e-10,
                         std::size_t max_iterations = 100000,
                         std::size_t dense_limit = kDenseNormLimit);

template <class Scalar>
NormReport operator_norm(const Matrix<Scalar>& A, double tol = 1e-10) {
  return operator_norm(to_complex(A), tol);
}

// pi(d_x) on l2(C1), one matrix per morphism; pairs leaving the window are
// compressed to zero.
template <class Scalar>
std::vector<Matrix<Scalar>> regular_rep_basis(const FinCat& C);

template <class Scalar>
struct RegularRep {
  LinOp<Scalar> op;
  bool left_cancellative = true;
  bool compressed = false;
  std::optional<std::string> diagnostic;
};
// pi_f(d_z) = sum over x with d(x) = r(z) of f(x) d_xz.
template <class Scalar>
RegularRep<Scalar> regular_rep_category(const ConvElement<Scalar>& f);

template <class Scalar>
struct SemigroupRep {
  std::vector<Matrix<Scalar>> sigma;  // one per element of S
  std::size_t dim() const { return sigma.empty() ? 0 : std::size_t(sigma[0].rows()); }
};

struct RepCheck {
  bool ok = true;
  std::string failed;
  std::vector<Elem> witness;
};
// Homomorphism, contractive, sigma_e self-adjoint idempotent.
template <class Scalar>
RepCheck check_semigroup_rep(const FinRS& S, const SemigroupRep<Scalar>& sigma);

// phi'_s(d_t) = [rho(t) <= lambda(s)] d_st; requires left ample.
template <class Scalar>
SemigroupRep<Scalar> regular_representation(const FinRS& S);
template <class Scalar>
LinOp<Scalar> regular_rep_semigroup(const FinRS& S, const Vector<Scalar>& x);

// sum x_s sigma_s
template <class Scalar>
Matrix<Scalar> extend(const SemigroupRep<Scalar>& sigma, const Vector<Scalar>& x);

// The matrices {sigma_s : s in subset} are linearly independent.
template <class Scalar>
bool independent_on(const SemigroupRep<Scalar>& sigma, const std::vector<Elem>& subset);

// pi on functions of a finite set (via point masses) and sigma on S.
template <class Scalar>
struct CovariantPair {
  std::vector<Matrix<Scalar>> pi_point;
  std::vector<Matrix<Scalar>> sigma;

  std::size_t dim() const { return sigma.empty() ? 0 : std::size_t(sigma[0].rows()); }
  Matrix<Scalar> pi(const Vector<Scalar>& f) const;
};

struct CovarianceReport {
  bool covariance = true;       // pi(alpha_s(a)) sigma_s = sigma_s pi(a)
  bool range = true;            // span pi(J_e) H = sigma_e H
  bool indicator = true;        // pi(1_e) = sigma_e
  bool pi_homomorphism = true;  // point masses are pairwise orthogonal projections
  bool sigma_rep = true;
  std::vector<Elem> witness;
  bool ok() const { return covariance && range && indicator && pi_homomorphism && sigma_rep; }
};
template <class Scalar>
CovarianceReport check_covariant_pair(const FinRS& S, const EtaleAction& theta,
                                      const CovariantPair<Scalar>& pair);

// pi(d_phi) = prod over phi(e)=1 of sigma_e times prod over phi(e)=0 of (1 - sigma_e).
// Validates sigma first and asserts the pair conditions.
template <class Scalar>
CovariantPair<Scalar> covariant_pair_from_sigma(const FinRS& S, const CanonicalAction& can,
                                                const SemigroupRep<Scalar>& sigma);

// sum pi(a_s) sigma_s
template <class Scalar>
Matrix<Scalar> integrate(const CovariantPair<Scalar>& pair, const CrossedElement<Scalar>& x);

// F on the germ category, decomposed through representatives (s, x) of each
// germ; rng != nullptr picks random members instead of the least one.
template <class Scalar>
Matrix<Scalar> integrate(const CovariantPair<Scalar>& pair, const FinRS& S, const EtaleAction& theta,
                         const GermTable& G, const ConvElement<Scalar>& F,
                         std::mt19937_64* rng = nullptr);

// Pi[c] = Pi(d_c) for every germ c. sigma_s = Pi(1_Theta_s), pi(d_x) = Pi(d_u(x)).
template <class Scalar>
CovariantPair<Scalar> disintegrate(const FinRS& S, const GermTable& G,
                                   const std::vector<Matrix<Scalar>>& Pi);

// T_J = (pi x sigma)(F 1_{P_J}) over the disjointified Theta_s covering the
// support of a bisection-supported F.
template <class Scalar>
std::vector<Matrix<Scalar>> bisection_blocks(const CovariantPair<Scalar>& pair, const FinRS& S,
                                             const EtaleAction& theta, const GermTable& G,
                                             const ConvElement<Scalar>& F);

template <class Scalar>
bool completely_orthogonal_check(const std::vector<Matrix<Scalar>>& family, double tol = 1e-12);

struct MaxNormIdentity {
  double sum_norm = 0;
  double max_norm = 0;
  bool holds = false;  // |sum - max| <= 1e-8
};
template <class Scalar>
MaxNormIdentity max_norm_identity(const std::vector<Matrix<Scalar>>& family);

// Words of length <= N over m letters, shortlex order.
std::vector<std::vector<std::uint32_t>> fock_basis(std::size_t m, std::size_t N);
template <class Scalar>
std::vector<LinOp<Scalar>> fock_creation(std::size_t m, std::size_t N);

Eigen::MatrixXcd evaluate(const NCPolynomial& p, const std::vector<Eigen::MatrixXcd>& ops,
                          Eigen::Index dim);
NormReport tensor_norm(const NCPolynomial& p, std::size_t m, std::size_t N);

struct PolyRep {
  LinOp<Complex> op;
  double norm = 0;
  double dominating_norm = 0;  // same polynomial with P = identity
};
PolyRep poly_rep(const Eigen::MatrixXcd& P, const Eigen::MatrixXcd& T,
                 const std::vector<Complex>& coeffs);

double von_neumann_bound(const std::vector<Complex>& coeffs, std::size_t grid = 4096);

void write_binary(std::ostream& os, const Eigen::MatrixXcd& A);

#define RSWORK_REPR_EXTERN(S)                                                                     \
  extern template std::vector<Matrix<S>> regular_rep_basis(const FinCat&);                       \
  extern template RegularRep<S> regular_rep_category(const ConvElement<S>&);                     \
  extern template RepCheck check_semigroup_rep(const FinRS&, const SemigroupRep<S>&);            \
  extern template SemigroupRep<S> regular_representation(const FinRS&);                          \
  extern template LinOp<S> regular_rep_semigroup(const FinRS&, const Vector<S>&);                \
  extern template Matrix<S> extend(const SemigroupRep<S>&, const Vector<S>&);                    \
  extern template bool independent_on(const SemigroupRep<S>&, const std::vector<Elem>&);         \
  extern template struct CovariantPair<S>;                                                       \
  extern template CovarianceReport check_covariant_pair(const FinRS&, const EtaleAction&,        \
                                                        const CovariantPair<S>&);                \
  extern template CovariantPair<S> covariant_pair_from_sigma(const FinRS&, const CanonicalAction&, \
                                                             const SemigroupRep<S>&);            \
  extern template Matrix<S> integrate(const CovariantPair<S>&, const CrossedElement<S>&);        \
  extern template Matrix<S> integrate(const CovariantPair<S>&, const FinRS&, const EtaleAction&, \
                                      const GermTable&, const ConvElement<S>&, std::mt19937_64*); \
  extern template CovariantPair<S> disintegrate(const FinRS&, const GermTable&,                  \
                                                const std::vector<Matrix<S>>&);                  \
  extern template std::vector<Matrix<S>> bisection_blocks(const CovariantPair<S>&, const FinRS&, \
                                                          const EtaleAction&, const GermTable&,  \
                                                          const ConvElement<S>&);                \
  extern template bool completely_orthogonal_check(const std::vector<Matrix<S>>&, double);       \
  extern template MaxNormIdentity max_norm_identity(const std::vector<Matrix<S>>&);              \
  extern template std::vector<LinOp<S>> fock_creation(std::size_t, std::size_t);

RSWORK_REPR_EXTERN(Complex)
RSWORK_REPR_EXTERN(GaussianRational)
#undef RSWORK_REPR_EXTERN

}  // namespace rswork
