#pragma once

#include <functional>

#include "schwarzian/complex.hpp"
#include "schwarzian/jet.hpp"
#include "schwarzian/mobius.hpp"

namespace schwarzian {

/// S(f) = f'''/f' - (3/2)(f''/f')^2. Throws Error(kCriticalPoint) when
/// |f'| <= 1e-10 · max(1, |f|).
Complex schwarzian_of_jet(const JetValue& jet);

using AnalyticFunction = std::function<Complex(Complex)>;

/// Derivatives of f at z0 from N samples on the circle |z - z0| = radius:
///   f^(k)(z0) ≈ k! r^-k (1/N) Σ_j f(z0 + r e^{iθ_j}) e^{-ikθ_j}.
/// `samples` must be a power of two and at least 16. Throws
/// Error(kSingularityInDisk) if any sample is not finite.
JetValue cauchy_ring_jet(const AnalyticFunction& f, Complex z0, double radius, int samples);

/// Schwarzian of an arbitrary analytic callable via the Cauchy ring.
Complex schwarzian_numeric(const AnalyticFunction& f, Complex z0, double radius = 0.3,
                           int samples = 64);

/// Jet of m(f(z)) for a finite inner jet.
JetValue compose_jet(const MobiusTransform& m, const JetValue& inner);

}  // namespace schwarzian
