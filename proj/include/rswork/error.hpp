#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rswork {

enum class ErrorCode {
  structural,
  not_restriction,
  size_guard,
  unsupported,
  truncation,
  internal,
  validation,
  parse,
  semantic,
  non_convergence,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);
  ErrorCode code() const noexcept { return _code; }

 private:
  ErrorCode _code;
};

class StructuralError : public Error {
 public:
  explicit StructuralError(const std::string& what) : Error(ErrorCode::structural, what) {}
};

class NotRestrictionError : public Error {
 public:
  explicit NotRestrictionError(const std::string& what)
      : Error(ErrorCode::not_restriction, what) {}
};

class SizeError : public Error {
 public:
  explicit SizeError(const std::string& what) : Error(ErrorCode::size_guard, what) {}
};

class UnsupportedError : public Error {
 public:
  explicit UnsupportedError(const std::string& what) : Error(ErrorCode::unsupported, what) {}
};

class TruncationError : public Error {
 public:
  explicit TruncationError(const std::string& what) : Error(ErrorCode::truncation, what) {}
};

// A theorem-level invariant did not hold. Always a bug or corrupted input.
class InternalError : public Error {
 public:
  explicit InternalError(const std::string& what) : Error(ErrorCode::internal, what) {}
};

class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what) : Error(ErrorCode::validation, what) {}
};

class ParseError : public Error {
 public:
  ParseError(ErrorCode code, const std::string& file, std::size_t line, std::size_t column,
             const std::string& message);
  std::size_t line() const noexcept { return _line; }
  std::size_t column() const noexcept { return _column; }
  const std::string& message() const noexcept { return _message; }

 private:
  std::size_t _line;
  std::size_t _column;
  std::string _message;
};

class NonConvergenceError : public Error {
 public:
  NonConvergenceError(const std::string& what, double estimate, double lower, double upper,
                      std::vector<std::complex<double>> iterate);
  double estimate() const noexcept { return _estimate; }
  double lower() const noexcept { return _lower; }
  double upper() const noexcept { return _upper; }
  const std::vector<std::complex<double>>& iterate() const noexcept { return _iterate; }

 private:
  double _estimate;
  double _lower;
  double _upper;
  std::vector<std::complex<double>> _iterate;
};

// Size guards. Setting RSWORK_GUARD_OVERRIDE to anything but "" or "0" lifts them.
bool guards_lifted();
void enforce_guard(std::string_view what, std::size_t value, std::size_t limit);

}  // namespace rswork
