#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dqmax {

enum class ErrorKind {
  DependencyViolation,
  VerificationMismatch,
  InstanceTooLarge,
  BudgetExceeded,
  MalformedRequest,
  NoEligibleVariable,
  PreconditionViolation,
  Parse,
  UnsupportedOperator,
  Timeout,
  Internal,
};

const char* to_string(ErrorKind kind);

// Every failure raised by the library. Parse errors carry a 1-based
// line/column; other kinds leave them at zero.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);
  Error(ErrorKind kind, const std::string& message, std::size_t line,
        std::size_t column = 0);

  ErrorKind kind() const { return kind_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  ErrorKind kind_;
  std::size_t line_ = 0;
  std::size_t column_ = 0;
};

}  // namespace dqmax
