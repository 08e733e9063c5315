#pragma once

#include <stdexcept>
#include <string>

namespace schwarzian {

enum class ErrorCode {
  kInvalidArgument,
  kDegenerateLattice,
  kCriticalPoint,
  kPoleProximity,
  kSingularityInDisk,
  kAmbiguousMultiplicity,
  kDegenerateRelations,
  kNoTranscendentalSolution,
  kInternalConsistency,
};

const char* to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so
/// callers (notably the CLI) can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace schwarzian
