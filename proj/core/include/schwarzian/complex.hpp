#pragma once

#include <cmath>
#include <complex>
#include <limits>

namespace schwarzian {

using Complex = std::complex<double>;

inline constexpr Complex kI{0.0, 1.0};

inline bool is_finite(Complex z) noexcept {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

// max(1, |z|): the scale used by every mixed absolute/relative tolerance.
inline double unit_scale(Complex z) noexcept { return std::max(1.0, std::abs(z)); }

// Total order on complex numbers: real part first, then imaginary part.
inline bool lex_less(Complex a, Complex b) noexcept {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

/// A point of the Riemann sphere. The point at infinity carries no finite value.
class ExtendedComplex {
 public:
  constexpr ExtendedComplex() = default;
  constexpr ExtendedComplex(Complex z) : value_(z) {}  // NOLINT: implicit by design of the sphere
  constexpr ExtendedComplex(double x) : value_(x) {}   // NOLINT

  static constexpr ExtendedComplex infinity() {
    ExtendedComplex w;
    w.infinite_ = true;
    return w;
  }

  constexpr bool is_infinite() const noexcept { return infinite_; }
  constexpr bool is_finite() const noexcept { return !infinite_; }

  // Only meaningful when finite.
  constexpr Complex value() const noexcept { return value_; }

  friend bool operator==(const ExtendedComplex& a, const ExtendedComplex& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
    return a.value_ == b.value_;
  }

 private:
  Complex value_{};
  bool infinite_ = false;
};

// Chordal distance on the Riemann sphere; used to compare extended values.
inline double chordal_distance(const ExtendedComplex& a, const ExtendedComplex& b) {
  if (a.is_infinite() && b.is_infinite()) return 0.0;
  if (a.is_infinite()) return 2.0 / std::sqrt(1.0 + std::norm(b.value()));
  if (b.is_infinite()) return 2.0 / std::sqrt(1.0 + std::norm(a.value()));
  return 2.0 * std::abs(a.value() - b.value()) /
         std::sqrt((1.0 + std::norm(a.value())) * (1.0 + std::norm(b.value())));
}

}  // namespace schwarzian
