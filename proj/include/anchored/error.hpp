#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace anchored {

enum class ErrorCode {
  NonPositiveWeight,
  DuplicateEdge,
  UnknownVertex,
  EmptyGraph,
  BadParameter,
  FrontierViolation,
  TooLargeForEnumeration,
  NoInteriorVertex,
  SingularSystem,
  NonConvergence,
  Unreachable,
  MissingDecomposition,
  EmptyInput,
  BadDistribution,
  GeneratorExhausted,
  ParseError,
  IoError,
};

std::string_view error_code_name(ErrorCode code);

// Single exception type for all library errors; `code()` gives the
// machine-readable reason, what() a human-readable message.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace anchored
