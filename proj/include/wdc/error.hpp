#pragma once

#include <stdexcept>
#include <string>

namespace wdc {

enum class ErrorCode {
  kInvalidArgument,  // precondition or parameter violation
  kInfeasible,       // zero-forcing or schedule construction impossible
  kLimitExceeded,    // search guard or rejection-round cap hit
  kParse,            // malformed JSON / config input
  kDecodeFailure,    // missing side information, vanishing gain
  kInternal,         // broken invariant
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

inline void require(bool cond, const std::string& what) {
  if (!cond) fail(ErrorCode::kInvalidArgument, what);
}

}  // namespace wdc
