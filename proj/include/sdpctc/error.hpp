#pragma once

#include <stdexcept>
#include <string>

namespace sdpctc {

enum class ErrorCode {
  NonTriangularLength,
  DimensionMismatch,
  NotFinite,
  UncoverableEntry,
  InvalidSplit,
  DisconnectedSupport,
  NotNetworkFlow,
  NotInterior,
  SingularNormalMatrix,
  MaxIterations,
  NumericalStall,
  InfeasibleOrUnbounded,
  StructureViolation,
  IndefinitePivot,
  DenominatorUnderflow,
  BlockNotPsd,
  OverlapMismatch,
  ParseError,
  UnsupportedBlockStructure,
  InvalidArgument,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace sdpctc
