#include "schwarzian/mobius.hpp"

#include <algorithm>
#include <limits>
#include <ostream>

#include "schwarzian/error.hpp"
#include "schwarzian/jet.hpp"

namespace schwarzian {

MobiusTransform::MobiusTransform(Complex a, Complex b, Complex c, Complex d) {
  for (const Complex v : {a, b, c, d}) {
    if (!is_finite(v)) throw Error(ErrorCode::kInvalidArgument, "Mobius coefficient not finite");
  }
  const Complex det = a * d - b * c;
  const double scale = std::max({std::abs(a * d), std::abs(b * c), 1.0});
  if (std::abs(det) <= 1e-12 * scale) {
    throw Error(ErrorCode::kInvalidArgument, "Mobius transform is singular (ad - bc = 0)");
  }
  // Already-normalized input is kept bit-for-bit so serialized maps round-trip.
  const Complex s = std::abs(det - 1.0) <= 8.0 * std::numeric_limits<double>::epsilon() ? Complex(1.0) : std::sqrt(det);
  a_ = a / s;
  b_ = b / s;
  c_ = c / s;
  d_ = d / s;
}

MobiusTransform MobiusTransform::from_points(const std::array<Complex, 3>& z,
                                             const std::array<Complex, 3>& w) {
  // Cross-ratio map sending (z1, z2, z3) to (0, inf, 1).
  const auto to_standard = [](const std::array<Complex, 3>& p) {
    return MobiusTransform(p[2] - p[1], -p[0] * (p[2] - p[1]), p[2] - p[0], -p[1] * (p[2] - p[0]));
  };
  return compose(inverse(to_standard(w)), to_standard(z));
}

ExtendedComplex MobiusTransform::apply(const ExtendedComplex& z) const {
  if (z.is_infinite()) {
    if (c_ == 0.0) return ExtendedComplex::infinity();
    return a_ / c_;
  }
  const Complex den = c_ * z.value() + d_;
  if (den == 0.0) return ExtendedComplex::infinity();
  return (a_ * z.value() + b_) / den;
}

JetValue MobiusTransform::jet(Complex z) const {
  // With determinant one: m' = (cz + d)^-2, m'' = -2c (cz + d)^-3, m''' = 6c^2 (cz + d)^-4.
  const Complex den = c_ * z + d_;
  if (den == 0.0) throw Error(ErrorCode::kPoleProximity, "Mobius jet evaluated at its pole");
  const Complex inv = 1.0 / den;
  const Complex inv2 = inv * inv;
  return {(a_ * z + b_) * inv, inv2, -2.0 * c_ * inv2 * inv, 6.0 * c_ * c_ * inv2 * inv2};
}

bool MobiusTransform::is_identity() const { return approx_equal(identity()); }

bool MobiusTransform::approx_equal(const MobiusTransform& other, double tol) const {
  const auto close = [&](double sign) {
    return std::abs(a_ - sign * other.a_) <= tol * unit_scale(a_) &&
           std::abs(b_ - sign * other.b_) <= tol * unit_scale(b_) &&
           std::abs(c_ - sign * other.c_) <= tol * unit_scale(c_) &&
           std::abs(d_ - sign * other.d_) <= tol * unit_scale(d_);
  };
  return close(1.0) || close(-1.0);
}

ExtendedComplex apply(const MobiusTransform& m, const ExtendedComplex& z) { return m.apply(z); }

MobiusTransform compose(const MobiusTransform& m1, const MobiusTransform& m2) {
  return {m1.a() * m2.a() + m1.b() * m2.c(), m1.a() * m2.b() + m1.b() * m2.d(),
          m1.c() * m2.a() + m1.d() * m2.c(), m1.c() * m2.b() + m1.d() * m2.d()};
}

MobiusTransform inverse(const MobiusTransform& m) { return {m.d(), -m.b(), -m.c(), m.a()}; }

std::ostream& operator<<(std::ostream& os, const MobiusTransform& m) {
  return os << "Mobius(" << m.a() << ", " << m.b() << ", " << m.c() << ", " << m.d() << ")";
}

}  // namespace schwarzian
