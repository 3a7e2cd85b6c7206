#pragma once

#include <stdexcept>
#include <string>

namespace cheblab {

enum class ErrorCode {
  InvalidArgument = 1,
  DegreeMismatch,
  OrderCapExceeded,
  TrivialGroup,
  NotNormal,
  UnknownGroup,
  UnknownClassId,
  DeltaOutOfRange,
  BadModulus,
  InvalidScenario,
  ZeroWeight,
  HorizonExceedsPopulation,
  RamifiedPrime,
  NotPrime,
  Reducible,
  BoundTooLarge,
  ConfigError,
  ParseError,
  IoError,
  Overflow,
};

const char* error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace cheblab
