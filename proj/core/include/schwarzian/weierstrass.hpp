#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "schwarzian/complex.hpp"

namespace schwarzian {

/// Invariants (g2, g3) of a Weierstrass elliptic function. The cubic
/// 4t^3 - g2 t - g3 has distinct roots iff the discriminant is nonzero.
struct WeierstrassInvariants {
  Complex g2{};
  Complex g3{};

  Complex discriminant() const { return g2 * g2 * g2 - 27.0 * g3 * g3; }

  // |Δ| > 1e-10 · max(|g2|^3, |g3|^2, 1)
  bool is_nondegenerate() const;

  friend bool operator==(const WeierstrassInvariants&, const WeierstrassInvariants&) = default;
};

inline constexpr double kDiscriminantTolerance = 1e-10;
inline constexpr double kPoleProximity = 1e-6;

struct RootWithMultiplicity {
  Complex value;
  int multiplicity = 1;
};

/// Roots of 4t^3 - g2 t - g3, sorted ascending by real part then imaginary
/// part (repeated roots appear once per multiplicity).
struct StationaryValues {
  std::array<Complex, 3> roots{};
  bool degenerate = false;

  std::vector<RootWithMultiplicity> distinct() const;
};

/// Half-periods and stationary values of a nondegenerate lattice.
///
/// omega1 is paired with the stationary value of largest real part, omega3
/// with the one of smallest real part; wp(omega1 + omega3) is the middle one.
/// The pair is oriented so that Im(omega3 / omega1) > 0.
struct LatticeData {
  Complex omega1{};
  Complex omega3{};
  std::array<Complex, 3> stationary_values{};  // same order as StationaryValues::roots

  Complex e_omega1() const { return stationary_values[2]; }
  Complex e_omega2() const { return stationary_values[1]; }
  Complex e_omega3() const { return stationary_values[0]; }
};

/// Carlson's symmetric integral R_F(x, y, z) by the duplication iteration.
/// At most one argument may be zero; arguments must avoid the closed
/// negative real axis.
Complex carlson_rf(Complex x, Complex y, Complex z);

/// Laurent coefficients c_2..c_order of wp(z) = z^-2 + Σ c_k z^(2k-2).
std::vector<Complex> laurent_coefficients(const WeierstrassInvariants& inv, int order);

StationaryValues stationary_values(const WeierstrassInvariants& inv);

/// Throws Error(kDegenerateLattice) when Δ = 0.
LatticeData half_periods(const WeierstrassInvariants& inv);

/// wp and wp' at one point. `at_lattice_point` is set when z lies within
/// kPoleProximity of a lattice point; both values are then infinite.
struct WpValues {
  ExtendedComplex p;
  ExtendedComplex dp;
  bool at_lattice_point = false;
};

/// Evaluation engine for a fixed pair of invariants. Construction computes
/// the lattice (when nondegenerate) and the Laurent coefficients once;
/// evaluation reduces z modulo the lattice, halves it into the series disk,
/// sums the series and climbs back with the duplication formula.
class Weierstrass {
 public:
  explicit Weierstrass(const WeierstrassInvariants& inv);

  const WeierstrassInvariants& invariants() const noexcept { return inv_; }
  const std::optional<LatticeData>& lattice() const noexcept { return lattice_; }

  WpValues evaluate(Complex z) const;

  ExtendedComplex wp(Complex z) const { return evaluate(z).p; }
  ExtendedComplex wp_prime(Complex z) const { return evaluate(z).dp; }
  ExtendedComplex wp_second(Complex z) const;

  /// Representative of z in the period parallelogram centred at 0 (identity
  /// when the lattice is degenerate).
  Complex reduce(Complex z) const;

  /// Distance from z to the nearest lattice point, or |z| without a lattice.
  double lattice_distance(Complex z) const { return std::abs(reduce(z)); }

 private:
  std::pair<Complex, Complex> series(Complex w) const;

  WeierstrassInvariants inv_;
  std::optional<LatticeData> lattice_;
  // Gauss-reduced period basis, |basis_[0]| <= |basis_[1]|.
  std::array<Complex, 2> basis_{};
  double series_radius_ = 0.0;
  std::vector<Complex> coefficients_;  // c_2, c_3, ...
};

ExtendedComplex wp(Complex z, const WeierstrassInvariants& inv);
ExtendedComplex wp_prime(Complex z, const WeierstrassInvariants& inv);
ExtendedComplex wp_second(Complex z, const WeierstrassInvariants& inv);

}  // namespace schwarzian
