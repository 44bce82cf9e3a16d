#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace isog4 {

enum class ErrorKind {
  invalid_argument,
  singular,
  non_minimal,
  parse,
  guard,
  convergence,
};

inline std::string_view error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::invalid_argument: return "invalid_argument";
    case ErrorKind::singular: return "singular";
    case ErrorKind::non_minimal: return "non_minimal";
    case ErrorKind::parse: return "parse";
    case ErrorKind::guard: return "guard";
    case ErrorKind::convergence: return "convergence";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace isog4
