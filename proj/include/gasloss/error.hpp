#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gasloss {

enum class ErrorCode {
  // input validation
  NonPositiveCapacity,
  NegativeUsage,
  DuplicateName,
  EmptyName,
  EmptyInstance,
  LengthMismatch,
  UnknownName,
  ParseError,
  // partition / generators
  InvalidPartition,
  BadEpsilon,
  OddCardinality,
  OddSum,
  // factorization
  RepresentationViolated,
  // distributions
  DegenerateProfile,
  EmptyBox,
  // numerics and limits
  NumericalFailure,
  TooManyResources,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonPositiveCapacity: return "NonPositiveCapacity";
    case ErrorCode::NegativeUsage: return "NegativeUsage";
    case ErrorCode::DuplicateName: return "DuplicateName";
    case ErrorCode::EmptyName: return "EmptyName";
    case ErrorCode::EmptyInstance: return "EmptyInstance";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::UnknownName: return "UnknownName";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidPartition: return "InvalidPartition";
    case ErrorCode::BadEpsilon: return "BadEpsilon";
    case ErrorCode::OddCardinality: return "OddCardinality";
    case ErrorCode::OddSum: return "OddSum";
    case ErrorCode::RepresentationViolated: return "RepresentationViolated";
    case ErrorCode::DegenerateProfile: return "DegenerateProfile";
    case ErrorCode::EmptyBox: return "EmptyBox";
    case ErrorCode::NumericalFailure: return "NumericalFailure";
    case ErrorCode::TooManyResources: return "TooManyResources";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace gasloss
