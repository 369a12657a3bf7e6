#pragma once

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rswork/cat.hpp"
#include "rswork/error.hpp"
#include "rswork/germs.hpp"
#include "rswork/scalar.hpp"

namespace rswork {

// Finitely supported function on the morphisms of a category, with the
// convolution product.
template <class Scalar>
class ConvElement {
 public:
  explicit ConvElement(std::shared_ptr<const FinCat> C)
      : _C(std::move(C)), _c(Vector<Scalar>::Zero(Eigen::Index(_C->num_morphisms()))) {}

  static ConvElement delta(std::shared_ptr<const FinCat> C, Mor x, Scalar c = Scalar(1)) {
    ConvElement f(std::move(C));
    f[x] = c;
    return f;
  }

  const FinCat& category() const { return *_C; }
  const std::shared_ptr<const FinCat>& category_ptr() const { return _C; }
  const Vector<Scalar>& coeffs() const { return _c; }
  Vector<Scalar>& coeffs() { return _c; }
  const Scalar& operator[](Mor x) const { return _c[x]; }
  Scalar& operator[](Mor x) { return _c[x]; }

  std::vector<Mor> support() const {
    std::vector<Mor> out;
    for (Mor x = 0; x < _c.size(); ++x)
      if (!ScalarTraits<Scalar>::is_zero(_c[x])) out.push_back(x);
    return out;
  }

  ConvElement& operator+=(const ConvElement& o) {
    same_parent(o);
    _c += o._c;
    return *this;
  }
  ConvElement& operator-=(const ConvElement& o) {
    same_parent(o);
    _c -= o._c;
    return *this;
  }
  friend ConvElement operator+(ConvElement a, const ConvElement& b) { return a += b; }
  friend ConvElement operator-(ConvElement a, const ConvElement& b) { return a -= b; }
  friend ConvElement operator*(const Scalar& k, ConvElement a) {
    a._c *= k;
    return a;
  }
  friend bool operator==(const ConvElement& a, const ConvElement& b) {
    return a._C == b._C && a._c == b._c;
  }

  void same_parent(const ConvElement& o) const {
    if (_C != o._C) throw ValidationError("elements of different convolution algebras");
  }

 private:
  std::shared_ptr<const FinCat> _C;
  Vector<Scalar> _c;
};

// f * g (z) = sum over xy = z of f(x) g(y). Throws TruncationError if a
// nonzero product would leave the window.
template <class Scalar>
ConvElement<Scalar> convolve(const ConvElement<Scalar>& f, const ConvElement<Scalar>& g);

// f*(x) = conj(f(x^-1)); groupoids only.
template <class Scalar>
ConvElement<Scalar> involution(const ConvElement<Scalar>& f);

template <class Scalar>
double sup_norm(const ConvElement<Scalar>& f);

template <class Scalar>
bool supported_on_bisection(const ConvElement<Scalar>& f);

// Element of the crossed product: a_s supported in D_rho(s).
template <class Scalar>
struct CrossedElement {
  std::map<Elem, Vector<Scalar>> terms;

  void add(Elem s, const Vector<Scalar>& a);
  friend bool operator==(const CrossedElement& a, const CrossedElement& b) {
    return a.terms == b.terms;
  }
};

template <class Scalar>
CrossedElement<Scalar> crossed_term(const AlgebraAction& alpha, Elem s, const Vector<Scalar>& a);

// (a_s d_s)(b_t d_t) = alpha_s(alpha_s^-1(a_s) b_t) d_st
template <class Scalar>
CrossedElement<Scalar> crossed_multiply(const AlgebraAction& alpha, const CrossedElement<Scalar>& a,
                                        const CrossedElement<Scalar>& b);

// Element of the semigroup algebra: coefficient per element of S.
template <class Scalar>
Vector<Scalar> semigroup_multiply(const FinRS& S, const Vector<Scalar>& x, const Vector<Scalar>& y);

// psi(sum a_s d_s) = sum a_s 1_rho(s) d_s
template <class Scalar>
CrossedElement<Scalar> psi(const AlgebraAction& alpha, const Vector<Scalar>& x);

struct CoveringMorphism {
  std::shared_ptr<const FinCat> source;  // C
  std::shared_ptr<const FinCat> target;  // D
  std::vector<Obj> objects;                 // phi_0
  std::vector<std::vector<Mor>> morphisms;  // phi_1, sorted
};

struct CoveringReport {
  std::array<bool, 6> pass{true, true, true, true, true, true};
  std::array<std::vector<std::uint32_t>, 6> witness;
  bool units_to_units = true;  // hat(u(D0)) = u(C0)
  bool ok() const;
};
CoveringReport validate_covering(const CoveringMorphism& phi);

// {z in C1 : phi_1(z) meets A}
std::vector<Mor> hat(const CoveringMorphism& phi, const std::vector<Mor>& A);

// T(f)(z) = sum over x in phi_1(z) of f(x); f lives on D, the result on C.
template <class Scalar>
ConvElement<Scalar> covering_transfer(const CoveringMorphism& phi, const ConvElement<Scalar>& f);

// psi after phi.
CoveringMorphism compose(const CoveringMorphism& psi, const CoveringMorphism& phi);
CoveringMorphism identity_covering(std::shared_ptr<const FinCat> C);

struct DisjointBlock {
  std::vector<std::size_t> labels;  // J
  std::vector<std::uint32_t> elements;
};
// P_J = (intersection over J) minus (union over the rest), nonempty blocks only.
std::vector<DisjointBlock> disjointify(const std::vector<std::vector<std::uint32_t>>& family);

#define RSWORK_CONV_EXTERN(S)                                                                    \
  extern template ConvElement<S> convolve(const ConvElement<S>&, const ConvElement<S>&);        \
  extern template ConvElement<S> involution(const ConvElement<S>&);                             \
  extern template double sup_norm(const ConvElement<S>&);                                       \
  extern template bool supported_on_bisection(const ConvElement<S>&);                           \
  extern template struct CrossedElement<S>;                                                     \
  extern template CrossedElement<S> crossed_term(const AlgebraAction&, Elem, const Vector<S>&); \
  extern template CrossedElement<S> crossed_multiply(const AlgebraAction&,                      \
                                                     const CrossedElement<S>&,                  \
                                                     const CrossedElement<S>&);                 \
  extern template Vector<S> semigroup_multiply(const FinRS&, const Vector<S>&, const Vector<S>&); \
  extern template CrossedElement<S> psi(const AlgebraAction&, const Vector<S>&);                \
  extern template ConvElement<S> covering_transfer(const CoveringMorphism&, const ConvElement<S>&);

RSWORK_CONV_EXTERN(Complex)
RSWORK_CONV_EXTERN(GaussianRational)
#undef RSWORK_CONV_EXTERN

}  // namespace rswork
