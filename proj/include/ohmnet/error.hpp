#pragma once

#include <stdexcept>
#include <string>

namespace ohmnet {

enum class ErrorCode {
  DuplicateEdge,
  SelfLoop,
  NonPositiveWeight,
  Disconnected,
  SourceEqualsSink,
  IdOutOfRange,
  SyntaxError,
  InvalidParams,
  ConnectivityRetryExhausted,
  TooLargeForExact,
  ParameterOutOfRange,
  DegenerateSpectrum,
  BoundViolation,
  SingularSystem,
  TokenOverflow,
  IoError,
};

const char* error_code_name(ErrorCode c);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) {
  throw Error(code, msg);
}

}  // namespace ohmnet
