#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace painleve {

/// Error categories surfaced by the library. The CLI maps each to an exit code.
enum class ErrorCode {
  validation,   // malformed input, violated precondition
  resonance,    // small divisor below the floor or a Gamma pole
  fit_failure,  // singular or non-converging parameter fit
  unsupported,  // request outside the implemented scope
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::validation: return "validation";
    case ErrorCode::resonance: return "resonance";
    case ErrorCode::fit_failure: return "fit_failure";
    case ErrorCode::unsupported: return "unsupported";
  }
  return "unknown";
}

inline int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::validation: return 2;
    case ErrorCode::resonance: return 3;
    case ErrorCode::fit_failure: return 4;
    case ErrorCode::unsupported: return 2;
  }
  return 1;
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline void require(bool ok, const std::string& what) {
  if (!ok) fail(ErrorCode::validation, what);
}

}  // namespace painleve
