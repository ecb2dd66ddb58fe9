#pragma once

#include <stdexcept>
#include <string>

namespace weavekit {

// Every failure the library reports, as a closed set of kinds. Callers that
// need to branch on the cause (the CLI exit-code mapping, tests) switch on
// kind(); the message is for humans.
enum class ErrorKind {
  NonSquare,
  NotHermitian,
  NoConvergence,
  ShapeMismatch,
  NotPSD,
  DimensionMismatch,
  EmptyFamily,
  NonFinite,
  OuterCountMismatch,
  AmbientDimMismatch,
  InnerIndexMismatch,
  EnumerationCapExceeded,
  PreconditionFailure,
  HypothesisFailure,
  SyntaxError,
  SchemaError,
  SemanticError,
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::NonSquare: return "NonSquare";
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::NotPSD: return "NotPSD";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::EmptyFamily: return "EmptyFamily";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::OuterCountMismatch: return "OuterCountMismatch";
    case ErrorKind::AmbientDimMismatch: return "AmbientDimMismatch";
    case ErrorKind::InnerIndexMismatch: return "InnerIndexMismatch";
    case ErrorKind::EnumerationCapExceeded: return "EnumerationCapExceeded";
    case ErrorKind::PreconditionFailure: return "PreconditionFailure";
    case ErrorKind::HypothesisFailure: return "HypothesisFailure";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::SchemaError: return "SchemaError";
    case ErrorKind::SemanticError: return "SemanticError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace weavekit
