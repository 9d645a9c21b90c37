#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace khcover {

enum class ErrorKind {
  MalformedCode,
  NonPlanar,
  BadArcCount,
  LengthMismatch,
  NotSuccessor,
  NoMark,
  BudgetExceeded,
  NotAComplex,
  NotCubeShaped,
  NotChainMap,
  HypothesisFails,
  Disconnected,
  NotAlternating,
  IndefiniteForm,
  DisconnectedResolution,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::MalformedCode: return "MalformedCode";
    case ErrorKind::NonPlanar: return "NonPlanar";
    case ErrorKind::BadArcCount: return "BadArcCount";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::NotSuccessor: return "NotSuccessor";
    case ErrorKind::NoMark: return "NoMark";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::NotAComplex: return "NotAComplex";
    case ErrorKind::NotCubeShaped: return "NotCubeShaped";
    case ErrorKind::NotChainMap: return "NotChainMap";
    case ErrorKind::HypothesisFails: return "HypothesisFails";
    case ErrorKind::Disconnected: return "Disconnected";
    case ErrorKind::NotAlternating: return "NotAlternating";
    case ErrorKind::IndefiniteForm: return "IndefiniteForm";
    case ErrorKind::DisconnectedResolution: return "DisconnectedResolution";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the kinds above so
/// callers (the CLI in particular) can map it to an exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace khcover
