#pragma once

#include <stdexcept>
#include <string>

namespace morphan {

enum class ErrorKind {
  Parse,
  Validation,
  EmptyWord,
  Precondition,
  Divergence,
  PrefixTooShort,
  CaseI,
  WindowTooSmall,
  NotStable,
  NotStableMultiblock,
  UnboundedTail,
  SearchBudgetExceeded,
  MissingMinimalPeriod,
  Range,
  InsufficientData,
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::Parse: return "ParseError";
    case ErrorKind::Validation: return "ValidationError";
    case ErrorKind::EmptyWord: return "EmptyWordError";
    case ErrorKind::Precondition: return "PreconditionError";
    case ErrorKind::Divergence: return "DivergenceError";
    case ErrorKind::PrefixTooShort: return "PrefixTooShort";
    case ErrorKind::CaseI: return "CaseIError";
    case ErrorKind::WindowTooSmall: return "WindowTooSmall";
    case ErrorKind::NotStable: return "NotStable";
    case ErrorKind::NotStableMultiblock: return "NotStableMultiblock";
    case ErrorKind::UnboundedTail: return "UnboundedTailError";
    case ErrorKind::SearchBudgetExceeded: return "SearchBudgetExceeded";
    case ErrorKind::MissingMinimalPeriod: return "MissingMinimalPeriod";
    case ErrorKind::Range: return "RangeError";
    case ErrorKind::InsufficientData: return "InsufficientData";
  }
  return "Error";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg)
      : std::runtime_error(std::string(to_string(kind)) + ": " + msg), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace morphan
