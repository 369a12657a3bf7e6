#include "rswork/polynomial.hpp"

#include <cctype>
#include <sstream>

#include "rswork/error.hpp"

namespace rswork {

std::size_t NCPolynomial::num_variables() const {
  std::size_t m = 0;
  for (const auto& [w, c] : terms)
    for (auto i : w) m = std::max<std::size_t>(m, i + 1);
  return m;
}

std::size_t NCPolynomial::degree() const {
  std::size_t d = 0;
  for (const auto& [w, c] : terms) d = std::max(d, w.size());
  return d;
}

double NCPolynomial::l1_norm() const {
  double s = 0;
  for (const auto& [w, c] : terms) s += std::abs(c);
  return s;
}

std::complex<double> NCPolynomial::at(const std::vector<std::complex<double>>& values) const {
  std::complex<double> s = 0;
  for (const auto& [w, c] : terms) {
    std::complex<double> m = c;
    for (auto i : w) m *= values.at(i);
    s += m;
  }
  return s;
}

std::vector<std::complex<double>> NCPolynomial::univariate_coefficients() const {
  if (num_variables() > 1) throw ValidationError("polynomial has more than one variable");
  std::vector<std::complex<double>> a(degree() + 1, 0.0);
  for (const auto& [w, c] : terms) a[w.size()] += c;
  return a;
}

NCPolynomial& NCPolynomial::operator+=(const NCPolynomial& o) {
  for (const auto& [w, c] : o.terms) {
    auto& v = terms[w];
    v += c;
    if (v == std::complex<double>(0)) terms.erase(w);
  }
  return *this;
}

NCPolynomial operator*(const NCPolynomial& a, const NCPolynomial& b) {
  NCPolynomial out;
  for (const auto& [u, c] : a.terms)
    for (const auto& [v, d] : b.terms) {
      NCPolynomial t;
      auto w = u;
      w.insert(w.end(), v.begin(), v.end());
      t.terms[w] = c * d;
      out += t;
    }
  return out;
}

NCPolynomial univariate(const std::vector<std::complex<double>>& coeffs) {
  NCPolynomial p;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (coeffs[k] == std::complex<double>(0)) continue;
    p.terms[std::vector<std::uint32_t>(k, 0)] = coeffs[k];
  }
  return p;
}

namespace {

class PolyParser {
 public:
  explicit PolyParser(const std::string& s) : _s(s) {}

  NCPolynomial parse() {
    auto p = sum();
    skip();
    if (_i != _s.size()) fail("unexpected '" + std::string(1, _s[_i]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError(ErrorCode::parse, "<polynomial>", 1, _i + 1, msg);
  }
  void skip() {
    while (_i < _s.size() && std::isspace(static_cast<unsigned char>(_s[_i]))) ++_i;
  }
  bool peek(char c) {
    skip();
    return _i < _s.size() && _s[_i] == c;
  }

  NCPolynomial sum() {
    NCPolynomial acc;
    bool first = true;
    while (true) {
      double sign = 1;
      if (peek('+') || peek('-')) {
        sign = _s[_i] == '-' ? -1 : 1;
        ++_i;
      } else if (!first) {
        break;
      }
      NCPolynomial t = product();
      if (sign < 0) {
        NCPolynomial m;
        m.terms[{}] = -1;
        t = m * t;
      }
      acc += t;
      first = false;
      skip();
      if (_i >= _s.size() || _s[_i] == ')') break;
    }
    return acc;
  }

  bool starts_factor() {
    skip();
    if (_i >= _s.size()) return false;
    char c = _s[_i];
    return std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == 'x' || c == 'i' ||
           c == '(';
  }

  NCPolynomial product() {
    NCPolynomial p = power();
    while (true) {
      if (peek('*')) {
        ++_i;
        p = p * power();
      } else if (starts_factor()) {
        p = p * power();
      } else {
        break;
      }
    }
    return p;
  }

  NCPolynomial power() {
    NCPolynomial base = atom();
    if (peek('^')) {
      ++_i;
      skip();
      std::size_t start = _i;
      while (_i < _s.size() && std::isdigit(static_cast<unsigned char>(_s[_i]))) ++_i;
      if (start == _i) fail("expected an exponent");
      int k = std::stoi(_s.substr(start, _i - start));
      NCPolynomial out;
      out.terms[{}] = 1;
      for (int j = 0; j < k; ++j) out = out * base;
      return out;
    }
    return base;
  }

  NCPolynomial atom() {
    skip();
    if (_i >= _s.size()) fail("unexpected end of polynomial");
    char c = _s[_i];
    NCPolynomial p;
    if (c == '(') {
      ++_i;
      p = sum();
      if (!peek(')')) fail("expected ')'");
      ++_i;
      return p;
    }
    if (c == 'x') {
      ++_i;
      std::size_t start = _i;
      while (_i < _s.size() && std::isdigit(static_cast<unsigned char>(_s[_i]))) ++_i;
      std::uint32_t k = 1;
      if (_i > start) k = std::uint32_t(std::stoul(_s.substr(start, _i - start)));
      if (k == 0) fail("variables are numbered from 1");
      p.terms[{k - 1}] = 1;
      return p;
    }
    if (c == 'i') {
      ++_i;
      p.terms[{}] = std::complex<double>(0, 1);
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t start = _i;
      while (_i < _s.size() &&
             (std::isdigit(static_cast<unsigned char>(_s[_i])) || _s[_i] == '.' || _s[_i] == 'e' ||
              ((_s[_i] == '+' || _s[_i] == '-') && _i > start && _s[_i - 1] == 'e')))
        ++_i;
      double v;
      try {
        v = std::stod(_s.substr(start, _i - start));
      } catch (const std::exception&) {
        _i = start;
        fail("bad number");
      }
      if (_i < _s.size() && _s[_i] == 'i') {
        ++_i;
        p.terms[{}] = std::complex<double>(0, v);
      } else {
        p.terms[{}] = v;
      }
      return p;
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  const std::string& _s;
  std::size_t _i = 0;
};

}  // namespace

NCPolynomial parse_polynomial(const std::string& text) { return PolyParser(text).parse(); }

std::string to_string(const NCPolynomial& p) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [w, c] : p.terms) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i)";
    for (auto i : w) os << "*x" << (i + 1);
  }
  if (first) os << "0";
  return os.str();
}

}  // namespace rswork
