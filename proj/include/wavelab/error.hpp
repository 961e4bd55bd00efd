#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace wavelab {

enum class ErrorKind {
  InvalidFrame,
  Truncated,
  BadSeedLength,
  BadKeyLength,
  IcvMismatch,
  EmptyPassphrase,
  ConfigError,
  NotFound,
  InsufficientCapture,
  ChallengeTooLong,
  Exhausted,
  NotEnoughWeakIvs,
  VerificationFailed,
  IvUnknown,
  PrefixTooShort,
  OutOfRange,
  OracleSilent,
  SeedTooShort,
  IvNeverReused,
  NotStronger,
  UpstreamAuthFailed,
  IoError,
  ParseError,
  EmptySurvey,
  InfeasibleProfile,
  Usage,
};

constexpr std::string_view kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidFrame: return "InvalidFrame";
    case ErrorKind::Truncated: return "Truncated";
    case ErrorKind::BadSeedLength: return "BadSeedLength";
    case ErrorKind::BadKeyLength: return "BadKeyLength";
    case ErrorKind::IcvMismatch: return "IcvMismatch";
    case ErrorKind::EmptyPassphrase: return "EmptyPassphrase";
    case ErrorKind::ConfigError: return "ConfigError";
    case ErrorKind::NotFound: return "NotFound";
    case ErrorKind::InsufficientCapture: return "InsufficientCapture";
    case ErrorKind::ChallengeTooLong: return "ChallengeTooLong";
    case ErrorKind::Exhausted: return "Exhausted";
    case ErrorKind::NotEnoughWeakIvs: return "NotEnoughWeakIvs";
    case ErrorKind::VerificationFailed: return "VerificationFailed";
    case ErrorKind::IvUnknown: return "IvUnknown";
    case ErrorKind::PrefixTooShort: return "PrefixTooShort";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::OracleSilent: return "OracleSilent";
    case ErrorKind::SeedTooShort: return "SeedTooShort";
    case ErrorKind::IvNeverReused: return "IvNeverReused";
    case ErrorKind::NotStronger: return "NotStronger";
    case ErrorKind::UpstreamAuthFailed: return "UpstreamAuthFailed";
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::EmptySurvey: return "EmptySurvey";
    case ErrorKind::InfeasibleProfile: return "InfeasibleProfile";
    case ErrorKind::Usage: return "Usage";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a kind the CLI maps to an
/// exit code and a JSON error object.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(kind_name(kind)) + ": " + detail),
        kind_(kind),
        detail_(detail) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

}  // namespace wavelab
