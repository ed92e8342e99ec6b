#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace kstress {

enum class ErrorCode {
  InvalidComplex,
  InvalidArgument,
  NotAFace,
  DegenerateFace,
  NotAVertex,
  DegenerateQuotient,
  DegenerateEmbedding,
  NotSimplicial,
  ExpansionFailure,
  NotNeighborlyEnough,
  InvalidCertificate,
  NotMissing,
  RigidityFailure,
  InvalidInput,
  ReconstructionFailure,
  CompletionFailure,
  ParseError,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace kstress
