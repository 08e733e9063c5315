#include "schwarzian/error.hpp"

namespace schwarzian {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid-argument";
    case ErrorCode::kDegenerateLattice: return "degenerate-lattice";
    case ErrorCode::kCriticalPoint: return "critical-point";
    case ErrorCode::kPoleProximity: return "pole-proximity";
    case ErrorCode::kSingularityInDisk: return "singularity-in-disk";
    case ErrorCode::kAmbiguousMultiplicity: return "ambiguous-multiplicity";
    case ErrorCode::kDegenerateRelations: return "degenerate-relations";
    case ErrorCode::kNoTranscendentalSolution: return "no-transcendental-solution";
    case ErrorCode::kInternalConsistency: return "internal-consistency";
  }
  return "unknown";
}

}  // namespace schwarzian
