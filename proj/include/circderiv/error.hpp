#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace circderiv {

enum class ErrorKind {
  InvalidArgument,
  InvalidLaw,
  Parse,
  DegenerateWeights,
  PoleProximity,
  DegreeTooLarge,
  OrderTooLarge,
  EigenFailure,
  RefinementFailure,
  PTooLarge,
  SizeTooLarge,
  SupportTooLarge,
};

std::string_view to_string(ErrorKind kind);

/// Raised by every library operation. Usage-class kinds (bad input, bad
/// grammar) are distinguished from numerical failures by is_usage_error().
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline bool is_usage_error(ErrorKind kind) {
  return kind == ErrorKind::InvalidArgument || kind == ErrorKind::InvalidLaw ||
         kind == ErrorKind::Parse;
}

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::InvalidLaw: return "InvalidLaw";
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::DegenerateWeights: return "DegenerateWeights";
    case ErrorKind::PoleProximity: return "PoleProximity";
    case ErrorKind::DegreeTooLarge: return "DegreeTooLarge";
    case ErrorKind::OrderTooLarge: return "OrderTooLarge";
    case ErrorKind::EigenFailure: return "EigenFailure";
    case ErrorKind::RefinementFailure: return "RefinementFailure";
    case ErrorKind::PTooLarge: return "PTooLarge";
    case ErrorKind::SizeTooLarge: return "SizeTooLarge";
    case ErrorKind::SupportTooLarge: return "SupportTooLarge";
  }
  return "Unknown";
}

}  // namespace circderiv
