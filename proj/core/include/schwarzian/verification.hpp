#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "schwarzian/equations.hpp"
#include "schwarzian/solution.hpp"

namespace schwarzian {

/// Seeded sampling of generic points in the square [-half_width, half_width]^2.
/// A point is excluded when it lies within `exclusion` of a lattice point,
/// a pole of u or a critical point of u.
struct SamplingOptions {
  int samples = 200;
  double tolerance = 1e-6;
  std::uint64_t seed = 42;
  double half_width = 2.0;
  double exclusion = 1e-2;
};

struct ResidualReport {
  int sample_count = 0;
  double max_abs_residual = 0.0;
  double max_rel_residual = 0.0;
  Complex worst_point{};
  int excluded_points = 0;
  bool pass = false;
  double tolerance = 0.0;
};

/// Deterministic uniform doubles in [0, 1) from a seed; identical on every
/// platform.
class PointSampler {
 public:
  explicit PointSampler(std::uint64_t seed);
  double uniform();
  Complex in_square(double half_width);

 private:
  std::uint64_t state_;
};

/// Whether an evaluated point is far enough from lattice points, poles and
/// critical points to be used as a sample.
bool is_generic(const EvaluatedJet& e, double exclusion);

/// Generic points for one solution (at most 50·samples draws).
std::vector<Complex> generic_points(const SolutionEvaluator& eval, const SamplingOptions& options,
                                    int* excluded = nullptr);

/// |S(u)^p - R(u)| and its relative form |.| / max(1, |R(u)|).
struct PointResidual {
  double abs = 0.0;
  double rel = 0.0;
};

/// Throws Error(kCriticalPoint) when u' vanishes and Error(kPoleProximity)
/// when R(u) is infinite.
PointResidual equation_residual(const SchwarzianEquation& eq, const JetValue& jet);

/// Residual of the full equation over seeded generic points.
/// pass ⇔ max_rel_residual <= tolerance and at least one point was sampled.
ResidualReport verify_solution(const SchwarzianEquation& eq, const Solution& s,
                               const SamplingOptions& options = {});

struct SubequationFactor {
  Complex root;
  int multiplicity = 1;
};

/// First-order equation u'^n = K Π (u - root)^m.
struct SubequationSpec {
  int n = 2;
  Complex K{};
  std::vector<SubequationFactor> factors;

  /// Validates n ∈ {2, 3, 4, 6}, the multiplicity pattern for n
  /// ((1,1,1,1), (2,2,2), (2,3,3), (3,4,5)) and K != 0.
  static SubequationSpec make(int n, Complex K, std::vector<SubequationFactor> factors);
};

/// u'(z)^n - K Π (u(z) - root)^m.
Complex subequation_residual(const Solution& s, const SubequationSpec& spec, Complex z);

/// K = u'^n / Π (u - root)^m at one point.
Complex estimate_subequation_constant(const Solution& s, int n,
                                      const std::vector<SubequationFactor>& factors, Complex z);

/// Relative subequation residual |.| / max(1, |u'|^n) over generic points.
ResidualReport verify_subequation(const Solution& s, const SubequationSpec& spec,
                                  const SamplingOptions& options = {});

}  // namespace schwarzian
