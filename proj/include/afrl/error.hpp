#ifndef AFRL_ERROR_HPP
#define AFRL_ERROR_HPP

#include <stdexcept>
#include <string>

namespace afrl {

enum class ErrorCode {
  SingularMatrix,
  DegenerateAxes,
  DegenerateDirection,
  NoConvergence,
  PrefixTooShort,
  InsufficientMass,
  EmptySupport,
  DimensionMismatch,
  DepthExceeded,
  UnreliableScales,
  TailNotCertified,
  ConfigError,
  IoError,
};

inline const char* error_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::DegenerateAxes: return "DegenerateAxes";
    case ErrorCode::DegenerateDirection: return "DegenerateDirection";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::PrefixTooShort: return "PrefixTooShort";
    case ErrorCode::InsufficientMass: return "InsufficientMass";
    case ErrorCode::EmptySupport: return "EmptySupport";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::DepthExceeded: return "DepthExceeded";
    case ErrorCode::UnreliableScales: return "UnreliableScales";
    case ErrorCode::TailNotCertified: return "TailNotCertified";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace afrl

#endif
