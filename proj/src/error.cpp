#include "dqmax/error.hpp"

namespace dqmax {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DependencyViolation: return "dependency-violation";
    case ErrorKind::VerificationMismatch: return "verification-mismatch";
    case ErrorKind::InstanceTooLarge: return "instance-too-large";
    case ErrorKind::BudgetExceeded: return "budget-exceeded";
    case ErrorKind::MalformedRequest: return "malformed-request";
    case ErrorKind::NoEligibleVariable: return "no-eligible-variable";
    case ErrorKind::PreconditionViolation: return "precondition-violation";
    case ErrorKind::Parse: return "parse-error";
    case ErrorKind::UnsupportedOperator: return "unsupported-operator";
    case ErrorKind::Timeout: return "timeout";
    case ErrorKind::Internal: return "internal-error";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message),
      kind_(kind) {}

Error::Error(ErrorKind kind, const std::string& message, std::size_t line,
             std::size_t column)
    : std::runtime_error(std::string(to_string(kind)) + " at line " +
                         std::to_string(line) +
                         (column ? ", column " + std::to_string(column) : "") +
                         ": " + message),
      kind_(kind),
      line_(line),
      column_(column) {}

}  // namespace dqmax
