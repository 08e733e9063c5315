#pragma once

#include "schwarzian/complex.hpp"

namespace schwarzian {

/// Value and first three derivatives of an analytic function at one point.
///
/// The arithmetic operators propagate derivatives by the Leibniz and
/// quotient rules, so a jet of any rational expression in jets is exact.
struct JetValue {
  Complex f{};
  Complex f1{};
  Complex f2{};
  Complex f3{};

  static JetValue constant(Complex c) { return {c, 0.0, 0.0, 0.0}; }

  bool is_finite() const {
    return schwarzian::is_finite(f) && schwarzian::is_finite(f1) && schwarzian::is_finite(f2) &&
           schwarzian::is_finite(f3);
  }

  JetValue& operator+=(const JetValue& o) {
    f += o.f;
    f1 += o.f1;
    f2 += o.f2;
    f3 += o.f3;
    return *this;
  }
  JetValue& operator-=(const JetValue& o) {
    f -= o.f;
    f1 -= o.f1;
    f2 -= o.f2;
    f3 -= o.f3;
    return *this;
  }
  JetValue& operator*=(Complex s) {
    f *= s;
    f1 *= s;
    f2 *= s;
    f3 *= s;
    return *this;
  }
};

inline JetValue operator-(const JetValue& a) { return {-a.f, -a.f1, -a.f2, -a.f3}; }
inline JetValue operator+(JetValue a, const JetValue& b) { return a += b; }
inline JetValue operator-(JetValue a, const JetValue& b) { return a -= b; }
inline JetValue operator+(JetValue a, Complex s) {
  a.f += s;
  return a;
}
inline JetValue operator+(Complex s, JetValue a) { return a + s; }
inline JetValue operator-(JetValue a, Complex s) {
  a.f -= s;
  return a;
}
inline JetValue operator-(Complex s, const JetValue& a) { return -a + s; }
inline JetValue operator*(JetValue a, Complex s) { return a *= s; }
inline JetValue operator*(Complex s, JetValue a) { return a *= s; }

inline JetValue operator*(const JetValue& a, const JetValue& b) {
  return {a.f * b.f, a.f1 * b.f + a.f * b.f1, a.f2 * b.f + 2.0 * a.f1 * b.f1 + a.f * b.f2,
          a.f3 * b.f + 3.0 * a.f2 * b.f1 + 3.0 * a.f1 * b.f2 + a.f * b.f3};
}

inline JetValue operator/(const JetValue& a, const JetValue& b) {
  const Complex inv = 1.0 / b.f;
  JetValue h;
  h.f = a.f * inv;
  h.f1 = (a.f1 - h.f * b.f1) * inv;
  h.f2 = (a.f2 - 2.0 * h.f1 * b.f1 - h.f * b.f2) * inv;
  h.f3 = (a.f3 - 3.0 * h.f2 * b.f1 - 3.0 * h.f1 * b.f2 - h.f * b.f3) * inv;
  return h;
}
inline JetValue operator/(Complex s, const JetValue& b) { return JetValue::constant(s) / b; }
inline JetValue operator/(const JetValue& a, Complex s) { return a * (1.0 / s); }

inline JetValue pow(const JetValue& a, int n) {
  JetValue out = JetValue::constant(1.0);
  for (int i = 0; i < n; ++i) out = out * a;
  return out;
}

/// Jet of g(f(z)) given the jet of f at z and the jet of g at f(z).
inline JetValue chain(const JetValue& outer, const JetValue& inner) {
  const Complex d1 = inner.f1, d2 = inner.f2, d3 = inner.f3;
  return {outer.f, outer.f1 * d1, outer.f2 * d1 * d1 + outer.f1 * d2,
          outer.f3 * d1 * d1 * d1 + 3.0 * outer.f2 * d1 * d2 + outer.f1 * d3};
}

}  // namespace schwarzian
