#pragma once

#include <stdexcept>
#include <string>

namespace pantskit {

enum class ErrorCode {
  NotLoxodromic,
  DegenerateConfiguration,
  BasePointMismatch,
  EndpointMismatch,
  DegenerateChain,
  NullHomotopic,
  OutOfDomain,
  InvalidEpsilon,
  MalformedComplex,
  DegenerateTriangle,
  GeometryInfeasible,
  NotAComplex,
  DivisibilityFailure,
  NoAdmissibleA,
  PerturbationOutOfBounds,
  BasisMismatch,
  PatternDisconnected,
  ParamsOutOfBounds,
  AssumptionViolated,
  PathThroughUndevelopedPiece,
  ConfigParseError,
  UnknownSuite,
  IoError,
};

const char* error_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Structured warning for probing sharpness outside a lemma's hypothesis range:
// callers may continue, but the report records which hypothesis failed.
struct HypothesesViolated {
  bool violated = false;
  std::string detail;
  explicit operator bool() const { return violated; }
};

}  // namespace pantskit
