#pragma once

#include <initializer_list>
#include <span>
#include <vector>

#include "schwarzian/complex.hpp"

namespace schwarzian {

/// Polynomial with complex coefficients in ascending degree. Trailing zero
/// coefficients are trimmed, so the zero polynomial has no coefficients.
class PolynomialC {
 public:
  PolynomialC() = default;
  explicit PolynomialC(std::vector<Complex> coefficients);
  PolynomialC(std::initializer_list<Complex> coefficients)
      : PolynomialC(std::vector<Complex>(coefficients)) {}

  static PolynomialC constant(Complex c) { return PolynomialC({c}); }
  /// lead · Π (u - root)
  static PolynomialC from_roots(std::span<const Complex> roots, Complex lead = 1.0);

  const std::vector<Complex>& coefficients() const noexcept { return coeffs_; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  // -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  Complex leading() const { return coeffs_.empty() ? Complex{} : coeffs_.back(); }
  Complex operator[](std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : Complex{}; }

  Complex operator()(Complex u) const;
  PolynomialC derivative() const;
  PolynomialC monic() const;

  double max_abs_coefficient() const;

  friend PolynomialC operator+(const PolynomialC& a, const PolynomialC& b);
  friend PolynomialC operator-(const PolynomialC& a, const PolynomialC& b);
  friend PolynomialC operator*(const PolynomialC& a, const PolynomialC& b);
  friend PolynomialC operator*(Complex s, const PolynomialC& a);

 private:
  void trim();
  std::vector<Complex> coeffs_;
};

PolynomialC pow(const PolynomialC& p, int n);

/// Coefficient-wise relative distance: max_k |a_k - b_k| / max(max|a|, max|b|).
double relative_coefficient_distance(const PolynomialC& a, const PolynomialC& b);

/// All complex roots (with repetition) by the Aberth–Ehrlich iteration
/// followed by Newton polishing. Constant polynomials have no roots.
std::vector<Complex> roots(const PolynomialC& p);

struct RootCluster {
  Complex value;
  int multiplicity = 1;
};

/// Roots grouped into clusters with multiplicities, sorted by (real, imag);
/// real parts within 1e-9 of each other count as equal.
///
/// Roots closer than 1e-7 · max(1, |r|) are always merged. Wider clusters
/// (multiple roots spread by roundoff) are merged only when the polynomial
/// reconstructed from the cluster centres matches p to 1e-9 coefficient-wise.
/// Throws Error(kAmbiguousMultiplicity) when two surviving clusters are
/// closer than 1e-5 · max(1, |r|).
std::vector<RootCluster> clustered_roots(const PolynomialC& p);

}  // namespace schwarzian
