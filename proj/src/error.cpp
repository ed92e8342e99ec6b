#include "kstress/error.hpp"

namespace kstress {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidComplex: return "InvalidComplex";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NotAFace: return "NotAFace";
    case ErrorCode::DegenerateFace: return "DegenerateFace";
    case ErrorCode::NotAVertex: return "NotAVertex";
    case ErrorCode::DegenerateQuotient: return "DegenerateQuotient";
    case ErrorCode::DegenerateEmbedding: return "DegenerateEmbedding";
    case ErrorCode::NotSimplicial: return "NotSimplicial";
    case ErrorCode::ExpansionFailure: return "ExpansionFailure";
    case ErrorCode::NotNeighborlyEnough: return "NotNeighborlyEnough";
    case ErrorCode::InvalidCertificate: return "InvalidCertificate";
    case ErrorCode::NotMissing: return "NotMissing";
    case ErrorCode::RigidityFailure: return "RigidityFailure";
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::ReconstructionFailure: return "ReconstructionFailure";
    case ErrorCode::CompletionFailure: return "CompletionFailure";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace kstress
