#ifndef SPECTRAL_ERROR_HPP
#define SPECTRAL_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace spectral {

enum class ErrorKind {
  InvalidData,
  PoleEvaluation,
  NoIsolation,
  NonConvergence,
  CountMismatch,
  Mismatch,
  NonPositive,
  DivisorMismatch,
  NotInvolution,
  PNotFixed,
  EssentialSingularity,
  SingularSystem,
  StencilFailure,
  NonPositiveDiagonal,
  DegenerateParameters,
  SingularFredholm,
  TailTooFat,
  IncompatibleField,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidData: return "InvalidData";
    case ErrorKind::PoleEvaluation: return "PoleEvaluation";
    case ErrorKind::NoIsolation: return "NoIsolation";
    case ErrorKind::NonConvergence: return "NonConvergence";
    case ErrorKind::CountMismatch: return "CountMismatch";
    case ErrorKind::Mismatch: return "Mismatch";
    case ErrorKind::NonPositive: return "NonPositive";
    case ErrorKind::DivisorMismatch: return "DivisorMismatch";
    case ErrorKind::NotInvolution: return "NotInvolution";
    case ErrorKind::PNotFixed: return "PNotFixed";
    case ErrorKind::EssentialSingularity: return "EssentialSingularity";
    case ErrorKind::SingularSystem: return "SingularSystem";
    case ErrorKind::StencilFailure: return "StencilFailure";
    case ErrorKind::NonPositiveDiagonal: return "NonPositiveDiagonal";
    case ErrorKind::DegenerateParameters: return "DegenerateParameters";
    case ErrorKind::SingularFredholm: return "SingularFredholm";
    case ErrorKind::TailTooFat: return "TailTooFat";
    case ErrorKind::IncompatibleField: return "IncompatibleField";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the kinds above so
/// callers (the CLI in particular) can map it onto a stable exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace spectral

#endif  // SPECTRAL_ERROR_HPP
