#include "ggospa/error.hpp"

namespace ggospa {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::SelfLoopInUnweighted: return "SelfLoopInUnweighted";
    case ErrorCode::ZeroWeightEdge: return "ZeroWeightEdge";
    case ErrorCode::InconsistentWeight: return "InconsistentWeight";
    case ErrorCode::DuplicateEdge: return "DuplicateEdge";
    case ErrorCode::NonFiniteValue: return "NonFiniteValue";
    case ErrorCode::MixedAttributePresence: return "MixedAttributePresence";
    case ErrorCode::AttributeDimensionMismatch: return "AttributeDimensionMismatch";
    case ErrorCode::InvalidPermutation: return "InvalidPermutation";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NonIntegralMatrix: return "NonIntegralMatrix";
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::ModeMismatch: return "ModeMismatch";
    case ErrorCode::EnumerationCapExceeded: return "EnumerationCapExceeded";
    case ErrorCode::SolverFailure: return "SolverFailure";
    case ErrorCode::InvalidLevel: return "InvalidLevel";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
  }
  return "Unknown";
}

}  // namespace ggospa
