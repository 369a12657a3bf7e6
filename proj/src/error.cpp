#include "rswork/error.hpp"

#include <cstdlib>

namespace rswork {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::structural: return "structural";
    case ErrorCode::not_restriction: return "not_restriction";
    case ErrorCode::size_guard: return "size_guard";
    case ErrorCode::unsupported: return "unsupported";
    case ErrorCode::truncation: return "truncation";
    case ErrorCode::internal: return "internal";
    case ErrorCode::validation: return "validation";
    case ErrorCode::parse: return "parse";
    case ErrorCode::semantic: return "semantic";
    case ErrorCode::non_convergence: return "non_convergence";
  }
  return "unknown";
}

Error::Error(ErrorCode code, const std::string& what) : std::runtime_error(what), _code(code) {}

static std::string located(const std::string& file, std::size_t line, std::size_t column,
                           const std::string& message) {
  return file + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + message;
}

ParseError::ParseError(ErrorCode code, const std::string& file, std::size_t line,
                       std::size_t column, const std::string& message)
    : Error(code, located(file, line, column, message)),
      _line(line),
      _column(column),
      _message(message) {}

NonConvergenceError::NonConvergenceError(const std::string& what, double estimate, double lower,
                                         double upper, std::vector<std::complex<double>> iterate)
    : Error(ErrorCode::non_convergence, what),
      _estimate(estimate),
      _lower(lower),
      _upper(upper),
      _iterate(std::move(iterate)) {}

bool guards_lifted() {
  const char* v = std::getenv("RSWORK_GUARD_OVERRIDE");
  if (v == nullptr) return false;
  std::string s(v);
  return !s.empty() && s != "0";
}

void enforce_guard(std::string_view what, std::size_t value, std::size_t limit) {
  if (value > limit && !guards_lifted()) {
    throw SizeError(std::string(what) + " is " + std::to_string(value) + ", guard is " +
                    std::to_string(limit) + " (set RSWORK_GUARD_OVERRIDE=1 to lift)");
  }
}

}  // namespace rswork
