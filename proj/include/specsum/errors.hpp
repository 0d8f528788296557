#pragma once

#include <stdexcept>
#include <string>

namespace specsum {

// Typed failure categories surfaced by the analysis layers.  Refusals
// (the checker declines to decide) and violations (a stated hypothesis
// fails) both travel through this type so callers can isolate them
// per directive without losing the category.
enum class ErrorKind {
  ParseError,
  DuplicateLabel,
  UnknownDirective,
  UnknownLabel,
  BadSequence,
  BadOperator,
  BadDimension,
  BlockNotSupported,
  InfiniteCore,
  AmbiguousBoundary,
  ConvergenceFailure,
  NotAProjection,
  NotCoercive,
  HypothesisViolated,
  ExhaustedWitness,
  ScanBudgetExceeded,
  Undecidable,
  OracleMismatch,
  IoError,
};

inline const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::DuplicateLabel: return "DuplicateLabel";
    case ErrorKind::UnknownDirective: return "UnknownDirective";
    case ErrorKind::UnknownLabel: return "UnknownLabel";
    case ErrorKind::BadSequence: return "BadSequence";
    case ErrorKind::BadOperator: return "BadOperator";
    case ErrorKind::BadDimension: return "BadDimension";
    case ErrorKind::BlockNotSupported: return "BlockNotSupported";
    case ErrorKind::InfiniteCore: return "InfiniteCore";
    case ErrorKind::AmbiguousBoundary: return "AmbiguousBoundary";
    case ErrorKind::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorKind::NotAProjection: return "NotAProjection";
    case ErrorKind::NotCoercive: return "NotCoercive";
    case ErrorKind::HypothesisViolated: return "HypothesisViolated";
    case ErrorKind::ExhaustedWitness: return "ExhaustedWitness";
    case ErrorKind::ScanBudgetExceeded: return "ScanBudgetExceeded";
    case ErrorKind::Undecidable: return "Undecidable";
    case ErrorKind::OracleMismatch: return "OracleMismatch";
    case ErrorKind::IoError: return "IoError";
  }
  return "UnknownError";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string message)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message),
        kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace specsum
