#pragma once

#include <stdexcept>
#include <string>

namespace gpam {

enum class ErrorCode {
  InvalidArgument = 1,
  NonZeroMean,
  GridMismatch,
  Bandwidth,
  OutOfRange,
  SymmetryViolation,
  Numerical,
  Io,
  Config,
};

// Every failure raised by the core carries one of the codes above; the C API
// maps them one-to-one onto gpam_status.
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

inline void require(bool ok, ErrorCode code, const std::string& what) {
  if (!ok) fail(code, what);
}

}  // namespace gpam
