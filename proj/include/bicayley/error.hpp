#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bicayley {

enum class ErrorCode {
  EmptyOrders,
  OrderBelowTwo,
  SizeCapExceeded,
  CapExceeded,
  Timeout,
  BadParameter,
  SetOutOfRange,
  NotInverseClosed,
  BadSubgroup,
  SetNotAvoidingB,
  ExceptionalPair,
  HypothesisViolated,
  BudgetExceeded,
  OddOrder,
  ParseError,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyOrders: return "EmptyOrders";
    case ErrorCode::OrderBelowTwo: return "OrderBelowTwo";
    case ErrorCode::SizeCapExceeded: return "SizeCapExceeded";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::Timeout: return "Timeout";
    case ErrorCode::BadParameter: return "BadParameter";
    case ErrorCode::SetOutOfRange: return "SetOutOfRange";
    case ErrorCode::NotInverseClosed: return "NotInverseClosed";
    case ErrorCode::BadSubgroup: return "BadSubgroup";
    case ErrorCode::SetNotAvoidingB: return "SetNotAvoidingB";
    case ErrorCode::ExceptionalPair: return "ExceptionalPair";
    case ErrorCode::HypothesisViolated: return "HypothesisViolated";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::OddOrder: return "OddOrder";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Library-wide exception. Every failure path throws this with a code the
/// CLI maps onto its exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace bicayley
