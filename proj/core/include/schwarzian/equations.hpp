#pragma once

#include <array>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "schwarzian/complex.hpp"
#include "schwarzian/mobius.hpp"
#include "schwarzian/polynomial.hpp"

namespace schwarzian {

/// P/Q with P, Q coprime and Q nonzero. Construction cancels common roots.
class RationalFunctionC {
 public:
  RationalFunctionC(PolynomialC numerator, PolynomialC denominator);

  static RationalFunctionC constant(Complex c) {
    return {PolynomialC::constant(c), PolynomialC::constant(1.0)};
  }

  const PolynomialC& numerator() const noexcept { return num_; }
  const PolynomialC& denominator() const noexcept { return den_; }
  bool is_constant() const noexcept { return num_.degree() <= 0 && den_.degree() == 0; }

 private:
  PolynomialC num_;
  PolynomialC den_;
};

/// P(w)/Q(w) on the extended plane; the value at infinity comes from the
/// leading coefficients.
ExtendedComplex eval_R(const RationalFunctionC& r, const ExtendedComplex& w);

/// S(u, z)^p = R(u).
struct SchwarzianEquation {
  int p = 1;
  RationalFunctionC R = RationalFunctionC::constant(0.0);

  SchwarzianEquation(int power, RationalFunctionC rhs);
};

enum class CanonicalKind { kI, kII, kIII, kIV, kV, kVI };

const char* to_string(CanonicalKind kind) noexcept;
std::optional<CanonicalKind> parse_kind(const std::string& s);

/// Exponent carried by each canonical shape (kind VI keeps the equation's own p).
int canonical_power(CanonicalKind kind) noexcept;

/// One of the six canonical shapes.
///
///   I    S   = c Π_{j<=4}(u-σ_j) / Π_{j<=4}(u-τ_j)
///   II   S^3 = c (u-σ1)^3 (u-σ2)^3 / ((u-τ1)^3 (u-τ2)^2 (u-τ3))
///   III  S^3 = c (u-σ1)^3 (u-σ2)^3 / ((u-τ1)^2 (u-τ2)^2 (u-τ3)^2)
///   IV   S^2 = c (u-σ1)^2 (u-σ2)^2 / ((u-τ1)^2 (u-τ2) (u-τ3))
///   V    S   = c (u-σ1)(u-σ2) / ((u-τ1)(u-τ2))
///   VI   S^p = c
///
/// For kind I the numerator may have degree below four (fewer σ). τ entries
/// are pairwise distinct; for II and IV their order follows the multiplicity
/// pattern, otherwise they are sorted by (real, imag).
struct CanonicalForm {
  CanonicalKind kind = CanonicalKind::kVI;
  int p = 1;
  Complex c{};
  std::vector<Complex> sigma;
  std::vector<Complex> tau;

  /// The equation this form denotes.
  SchwarzianEquation to_equation() const;
};

/// Signature of an equation that matched no canonical shape.
struct NotCanonical {
  int p = 1;
  std::vector<int> numerator_multiplicities;
  std::vector<int> denominator_multiplicities;
  std::string reason;
};

using Classification = std::variant<CanonicalForm, NotCanonical>;

/// Matches (p, numerator pattern, denominator pattern) against the six
/// shapes. Never searches for a reducing Möbius map.
Classification classify(const SchwarzianEquation& eq);

/// Equation satisfied by v when u = m(v): same p, R' = R ∘ m.
SchwarzianEquation transform_equation(const SchwarzianEquation& eq, const MobiusTransform& m);

struct ElementarySymmetric {
  Complex e1, e2, e3, e4;
};

ElementarySymmetric elementary_symmetric(const std::array<Complex, 4>& tau);

/// Π_{j != i} (τ_i - τ_j), with i in 1..4. Throws on repeated τ.
Complex q_factor(const std::array<Complex, 4>& tau, int i);

/// Kind I data in expanded form: R(u) = (r4 u^4 + ... + r0) / Π(u - τ_j).
struct TypeICoefficients {
  std::array<Complex, 5> r{};  // r[k] multiplies u^k
  std::array<Complex, 4> tau{};

  static TypeICoefficients from_form(const CanonicalForm& form);
};

}  // namespace schwarzian
