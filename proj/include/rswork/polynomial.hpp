#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace rswork {

// Noncommutative polynomial. A word (i, j, k) is the monomial x_{i+1} x_{j+1} x_{k+1}.
struct NCPolynomial {
  std::map<std::vector<std::uint32_t>, std::complex<double>> terms;

  std::size_t num_variables() const;
  std::size_t degree() const;
  double l1_norm() const;
  std::complex<double> at(const std::vector<std::complex<double>>& values) const;
  // a_0, a_1, ... for a polynomial in at most one variable.
  std::vector<std::complex<double>> univariate_coefficients() const;

  NCPolynomial& operator+=(const NCPolynomial& o);
  friend NCPolynomial operator*(const NCPolynomial& a, const NCPolynomial& b);
  friend bool operator==(const NCPolynomial&, const NCPolynomial&) = default;
};

// Accepts forms like "x1+x2+x3", "1 + x", "2*x1*x2 - 0.5i x3", "(1+x)^2".
// A bare "x" is x1. Throws ParseError with the column of the problem.
NCPolynomial parse_polynomial(const std::string& text);

NCPolynomial univariate(const std::vector<std::complex<double>>& coeffs);

std::string to_string(const NCPolynomial& p);

}  // namespace rswork
