#include "cheblab/error.hpp"

namespace cheblab {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DegreeMismatch: return "DegreeMismatch";
    case ErrorCode::OrderCapExceeded: return "OrderCapExceeded";
    case ErrorCode::TrivialGroup: return "TrivialGroup";
    case ErrorCode::NotNormal: return "NotNormal";
    case ErrorCode::UnknownGroup: return "UnknownGroup";
    case ErrorCode::UnknownClassId: return "UnknownClassId";
    case ErrorCode::DeltaOutOfRange: return "DeltaOutOfRange";
    case ErrorCode::BadModulus: return "BadModulus";
    case ErrorCode::InvalidScenario: return "InvalidScenario";
    case ErrorCode::ZeroWeight: return "ZeroWeight";
    case ErrorCode::HorizonExceedsPopulation: return "HorizonExceedsPopulation";
    case ErrorCode::RamifiedPrime: return "RamifiedPrime";
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::Reducible: return "Reducible";
    case ErrorCode::BoundTooLarge: return "BoundTooLarge";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::Overflow: return "Overflow";
  }
  return "Unknown";
}

}  // namespace cheblab
