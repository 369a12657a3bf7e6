#pragma once

#include <gmpxx.h>

#include <Eigen/Dense>
#include <complex>
#include <ostream>
#include <string>

namespace rswork {

using Complex = std::complex<double>;

// Exact complex numbers with rational real and imaginary parts.
class GaussianRational {
 public:
  GaussianRational() : _re(0), _im(0) {}
  GaussianRational(int v) : _re(v), _im(0) {}  // NOLINT: implicit, Eigen builds Scalar(0)
  GaussianRational(long v) : _re(v), _im(0) {}  // NOLINT
  GaussianRational(mpq_class re, mpq_class im = 0) : _re(std::move(re)), _im(std::move(im)) {
    _re.canonicalize();
    _im.canonicalize();
  }

  const mpq_class& re() const { return _re; }
  const mpq_class& im() const { return _im; }

  GaussianRational& operator+=(const GaussianRational& o) {
    _re += o._re;
    _im += o._im;
    return *this;
  }
  GaussianRational& operator-=(const GaussianRational& o) {
    _re -= o._re;
    _im -= o._im;
    return *this;
  }
  GaussianRational& operator*=(const GaussianRational& o) {
    mpq_class re = _re * o._re - _im * o._im;
    mpq_class im = _re * o._im + _im * o._re;
    _re = re;
    _im = im;
    return *this;
  }
  GaussianRational& operator/=(const GaussianRational& o) {
    mpq_class den = o._re * o._re + o._im * o._im;
    mpq_class re = (_re * o._re + _im * o._im) / den;
    mpq_class im = (_im * o._re - _re * o._im) / den;
    _re = re;
    _im = im;
    return *this;
  }

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  friend GaussianRational operator-(const GaussianRational& a) {
    return GaussianRational(mpq_class(-a._re), mpq_class(-a._im));
  }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a._re == b._re && a._im == b._im;
  }
  friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

  friend std::ostream& operator<<(std::ostream& os, const GaussianRational& z) {
    return os << z._re << (z._im < 0 ? "-" : "+") << abs(z._im) << "i";
  }

 private:
  mpq_class _re;
  mpq_class _im;
};

inline GaussianRational conj(const GaussianRational& z) {
  return GaussianRational(z.re(), mpq_class(-z.im()));
}

template <class Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <class Scalar>
struct ScalarTraits;

template <>
struct ScalarTraits<Complex> {
  static constexpr bool exact = false;
  static Complex to_complex(const Complex& z) { return z; }
  static Complex from_complex(const Complex& z) { return z; }
  static Complex conj(const Complex& z) { return std::conj(z); }
  static bool is_zero(const Complex& z) { return z == Complex(0.0); }
  static std::string name() { return "complex<double>"; }
};

template <>
struct ScalarTraits<GaussianRational> {
  static constexpr bool exact = true;
  static Complex to_complex(const GaussianRational& z) { return {z.re().get_d(), z.im().get_d()}; }
  static GaussianRational from_complex(const Complex& z) {
    return GaussianRational(mpq_class(z.real()), mpq_class(z.imag()));
  }
  static GaussianRational conj(const GaussianRational& z) { return rswork::conj(z); }
  static bool is_zero(const GaussianRational& z) { return z.re() == 0 && z.im() == 0; }
  static std::string name() { return "gaussian_rational"; }
};

template <class Scalar>
Matrix<Scalar> adjoint(const Matrix<Scalar>& m) {
  return m.transpose().unaryExpr([](const Scalar& z) { return ScalarTraits<Scalar>::conj(z); });
}

template <class Scalar>
Eigen::MatrixXcd to_complex(const Matrix<Scalar>& m) {
  return m.unaryExpr([](const Scalar& z) { return ScalarTraits<Scalar>::to_complex(z); });
}

// Exact comparison for exact scalars, tolerance otherwise.
template <class Scalar>
bool approx_equal(const Matrix<Scalar>& a, const Matrix<Scalar>& b, double tol = 1e-9) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  if constexpr (ScalarTraits<Scalar>::exact) {
    return a == b;
  } else {
    return (a - b).cwiseAbs().maxCoeff() <= tol * std::max(1.0, a.cwiseAbs().maxCoeff()) ||
           a.size() == 0;
  }
}

template <class Scalar>
bool is_zero_matrix(const Matrix<Scalar>& a, double tol = 1e-9) {
  if constexpr (ScalarTraits<Scalar>::exact) {
    for (Eigen::Index i = 0; i < a.size(); ++i)
      if (!ScalarTraits<Scalar>::is_zero(a.data()[i])) return false;
    return true;
  } else {
    return a.size() == 0 || a.cwiseAbs().maxCoeff() <= tol;
  }
}

// Rank by Gaussian elimination; exact for exact scalars.
template <class Scalar>
Eigen::Index rank(Matrix<Scalar> m, double tol = 1e-9) {
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < m.cols() && r < m.rows(); ++c) {
    Eigen::Index pivot = -1;
    double best = 0;
    for (Eigen::Index i = r; i < m.rows(); ++i) {
      if constexpr (ScalarTraits<Scalar>::exact) {
        if (!ScalarTraits<Scalar>::is_zero(m(i, c))) {
          pivot = i;
          break;
        }
      } else {
        double a = std::abs(m(i, c));
        if (a > tol && a > best) {
          best = a;
          pivot = i;
        }
      }
    }
    if (pivot < 0) continue;
    m.row(r).swap(m.row(pivot));
    for (Eigen::Index i = r + 1; i < m.rows(); ++i) {
      if (ScalarTraits<Scalar>::is_zero(m(i, c))) continue;
      Scalar factor = m(i, c) / m(r, c);
      for (Eigen::Index j = c; j < m.cols(); ++j) m(i, j) -= factor * m(r, j);
    }
    ++r;
  }
  return r;
}

}  // namespace rswork

namespace Eigen {
template <>
struct NumTraits<rswork::GaussianRational> : GenericNumTraits<rswork::GaussianRational> {
  using Real = rswork::GaussianRational;
  using NonInteger = rswork::GaussianRational;
  using Nested = rswork::GaussianRational;
  using Literal = rswork::GaussianRational;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 10,
    AddCost = 40,
    MulCost = 100
  };
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
};
}  // namespace Eigen
