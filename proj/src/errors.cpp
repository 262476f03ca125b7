#include "pantskit/errors.hpp"

namespace pantskit {

const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotLoxodromic: return "NotLoxodromic";
    case ErrorCode::DegenerateConfiguration: return "DegenerateConfiguration";
    case ErrorCode::BasePointMismatch: return "BasePointMismatch";
    case ErrorCode::EndpointMismatch: return "EndpointMismatch";
    case ErrorCode::DegenerateChain: return "DegenerateChain";
    case ErrorCode::NullHomotopic: return "NullHomotopic";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::InvalidEpsilon: return "InvalidEpsilon";
    case ErrorCode::MalformedComplex: return "MalformedComplex";
    case ErrorCode::DegenerateTriangle: return "DegenerateTriangle";
    case ErrorCode::GeometryInfeasible: return "GeometryInfeasible";
    case ErrorCode::NotAComplex: return "NotAComplex";
    case ErrorCode::DivisibilityFailure: return "DivisibilityFailure";
    case ErrorCode::NoAdmissibleA: return "NoAdmissibleA";
    case ErrorCode::PerturbationOutOfBounds: return "PerturbationOutOfBounds";
    case ErrorCode::BasisMismatch: return "BasisMismatch";
    case ErrorCode::PatternDisconnected: return "PatternDisconnected";
    case ErrorCode::ParamsOutOfBounds: return "ParamsOutOfBounds";
    case ErrorCode::AssumptionViolated: return "AssumptionViolated";
    case ErrorCode::PathThroughUndevelopedPiece: return "PathThroughUndevelopedPiece";
    case ErrorCode::ConfigParseError: return "ConfigParseError";
    case ErrorCode::UnknownSuite: return "UnknownSuite";
    case ErrorCode::IoError: return "IoError";
  }
  return "UnknownError";
}

}  // namespace pantskit
