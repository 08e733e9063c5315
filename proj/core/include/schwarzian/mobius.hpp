#pragma once

#include <array>
#include <iosfwd>

#include "schwarzian/complex.hpp"

namespace schwarzian {

struct JetValue;

/// z -> (a z + b) / (c z + d), stored scaled to determinant one.
///
/// The scaling uses the principal square root of ad - bc, so a transform
/// and its negative describe the same map; equality accounts for that.
class MobiusTransform {
 public:
  /// Throws Error(kInvalidArgument) unless |ad - bc| > 1e-12 · max(|ad|, |bc|, 1).
  MobiusTransform(Complex a, Complex b, Complex c, Complex d);

  static MobiusTransform identity() { return {1.0, 0.0, 0.0, 1.0}; }

  /// The unique transform sending z1, z2, z3 to w1, w2, w3 (all finite, each
  /// triple pairwise distinct).
  static MobiusTransform from_points(const std::array<Complex, 3>& z,
                                     const std::array<Complex, 3>& w);

  Complex a() const noexcept { return a_; }
  Complex b() const noexcept { return b_; }
  Complex c() const noexcept { return c_; }
  Complex d() const noexcept { return d_; }
  std::array<Complex, 4> coefficients() const { return {a_, b_, c_, d_}; }

  ExtendedComplex apply(const ExtendedComplex& z) const;

  /// Value and first three derivatives at a finite non-pole point.
  JetValue jet(Complex z) const;

  bool is_identity() const;

  // Equality up to proportionality, 1e-10 after normalization.
  bool approx_equal(const MobiusTransform& other, double tol = 1e-10) const;

 private:
  Complex a_, b_, c_, d_;
};

ExtendedComplex apply(const MobiusTransform& m, const ExtendedComplex& z);
/// apply(compose(m1, m2), z) == apply(m1, apply(m2, z)).
MobiusTransform compose(const MobiusTransform& m1, const MobiusTransform& m2);
MobiusTransform inverse(const MobiusTransform& m);

std::ostream& operator<<(std::ostream& os, const MobiusTransform& m);

}  // namespace schwarzian
