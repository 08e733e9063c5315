#pragma once

#include <string>
#include <vector>

#include "schwarzian/equations.hpp"

namespace schwarzian::cli {

/// Kind I equations with a known elliptic-fractional solution
/// u = a - b / (wp(z - z0) - d).
///
/// All four share τ = {0, 1, -1, -1/3} and the numerator
/// 25u^4 + 20u^3 + 14u^2 + 4u + 1 up to scale; each picks a different pole value a.
struct ReferenceCase {
  std::string name;
  SchwarzianEquation equation;
  int tau_index;  // 1-based, into τ sorted as (-1, -1/3, 0, 1)
  Complex a, b, d, g2, g3;
};

std::vector<ReferenceCase> reference_cases();

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;
};

/// Runs every acceptance criterion; deterministic for a given build.
std::vector<CriterionResult> run_acceptance();

/// "PASS  3  title: detail"
std::string format(const CriterionResult& r);

}  // namespace schwarzian::cli
