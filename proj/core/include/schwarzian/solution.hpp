#pragma once

#include <limits>
#include <optional>
#include <string>
#include <variant>

#include "schwarzian/complex.hpp"
#include "schwarzian/jet.hpp"
#include "schwarzian/mobius.hpp"
#include "schwarzian/weierstrass.hpp"

namespace schwarzian {

// Every family is written as outer ∘ core(z - z0). `outer` defaults to the
// identity; Schwarzian values do not depend on it.

/// u(z) = a - b / (wp(z - z0) - d).
struct EllipticFractionalSolution {
  Complex a{};
  Complex b{};
  Complex d{};
  Complex z0{};
  WeierstrassInvariants inv;
  MobiusTransform outer = MobiusTransform::identity();
};

enum class WpFamily { kII, kIII, kIV };

/// Rational expressions in wp and wp':
///   II   u = -3c / (c - 74088 wp^3),                          inv = (0, c/10584)
///   III  u = 9 (9 wp + L^2) wp' / (2L (81 wp^2 - 9 L^2 wp + L^4)), inv = (0, c/432),  L^6 = -27c/64
///   IV   u = -(8 wp + L^2)^2 wp' / (2L wp (64 wp^2 + L^4)),    inv = (-c/36, 0),   c = 9 L^4 / 4
struct WpRationalSolution {
  WpFamily family = WpFamily::kII;
  Complex c{};
  Complex L{};  // unused for family II
  Complex z0{};
  WeierstrassInvariants inv;
  MobiusTransform outer = MobiusTransform::identity();
};

/// u(z) = outer(sin(alpha z + beta)).
struct TrigSolution {
  Complex alpha{};
  Complex beta{};
  MobiusTransform outer = MobiusTransform::identity();
};

/// u(z) = outer(exp(alpha z)).
struct ExpSolution {
  Complex alpha{};
  MobiusTransform outer = MobiusTransform::identity();
};

using Solution = std::variant<EllipticFractionalSolution, WpRationalSolution, TrigSolution, ExpSolution>;

/// Stable family tag used in documents: "elliptic-fractional",
/// "wp-rational-II" / "-III" / "-IV", "trig", "exp".
std::string family_name(const Solution& s);
const char* to_string(WpFamily f) noexcept;

const MobiusTransform& outer_map(const Solution& s);
/// outer(s) replaced by m ∘ outer(s).
Solution compose(const MobiusTransform& m, const Solution& s);
/// z0 shifted by delta (trig: beta shifted by -alpha·delta; exp: outer absorbs the factor).
Solution translate(const Solution& s, Complex delta);

/// Invariants of the underlying wp, if the family is elliptic.
std::optional<WeierstrassInvariants> invariants_of(const Solution& s);

/// Outcome of evaluating a solution at one point.
struct EvaluatedJet {
  JetValue jet;
  bool at_lattice_point = false;  // wp has a pole at z - z0
  bool is_pole = false;           // u itself is infinite (jet meaningless)
  double lattice_distance = std::numeric_limits<double>::infinity();
};

/// Evaluator holding the wp engine for one solution.
class SolutionEvaluator {
 public:
  explicit SolutionEvaluator(Solution s);

  const Solution& solution() const noexcept { return solution_; }

  /// Never throws for finite z; poles are reported through the flags.
  EvaluatedJet evaluate(Complex z) const;

  /// Throws Error(kPoleProximity) at poles of u.
  JetValue jet(Complex z) const;

  /// Value of u on the extended plane.
  ExtendedComplex value(Complex z) const;

 private:
  Solution solution_;
  std::optional<Weierstrass> engine_;
};

/// Exact jet (u, u', u'', u''') through the chain rule on wp.
JetValue solution_jet(const Solution& s, Complex z);

}  // namespace schwarzian
