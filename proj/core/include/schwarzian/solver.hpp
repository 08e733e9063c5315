#pragma once

#include <array>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "schwarzian/equations.hpp"
#include "schwarzian/solution.hpp"
#include "schwarzian/verification.hpp"

namespace schwarzian {

/// The equation provably has no solution of the requested family.
struct NoSolution {
  std::string reason;
  std::vector<std::string> diagnostics;
};

/// Pattern mismatch where nonexistence is not known.
struct Unresolved {
  std::string reason;
};

/// Per-relation acceptance threshold, relative to max|r_k|.
inline constexpr double kRelationTolerance = 1e-8;
/// Tolerance on the σ multiset for kinds II–V.
inline constexpr double kSigmaTolerance = 1e-7;

/// Brackets B_k with r_k = (b / q_i) B_k; they depend on τ only.
std::array<Complex, 5> type1_brackets(const ElementarySymmetric& e);

/// d, g2, g3 of the elliptic-fractional solution for pole value a = τ_i.
struct Type1Parameters {
  Complex d, g2, g3;
};
Type1Parameters type1_parameters(const std::array<Complex, 4>& tau, int i, Complex b);

/// 16 b^6 / q_i^6 Π_{j<k} (τ_j - τ_k)^2.
Complex type1_discriminant(const std::array<Complex, 4>& tau, int i, Complex b);

/// K in u'^2 = K Π (u - τ_j) for the solution with a = τ_i.
Complex type1_subequation_constant(const std::array<Complex, 4>& tau, int i, Complex b);

struct Type1Generated {
  TypeICoefficients coefficients;
  EllipticFractionalSolution solution;
};

/// Forward direction: coefficients and solution with a = τ_i, z0 = 0.
Type1Generated generate_type1(const std::array<Complex, 4>& tau, int i, Complex b);

/// Inverse direction. Tries i = 1..4 in order (or only `tau_index`) and
/// returns the first pole value a = τ_i whose five relations hold.
/// Throws Error(kDegenerateRelations) when every bracket vanishes.
std::variant<EllipticFractionalSolution, NoSolution> solve_type1(const TypeICoefficients& coeffs,
                                                                 std::optional<int> tau_index = {});

/// Every i whose relations hold, in order.
std::vector<EllipticFractionalSolution> solve_type1_all(const TypeICoefficients& coeffs);

/// Kind II with τ = (4, -3, 0).
std::variant<WpRationalSolution, NoSolution> solve_type2(Complex c, const std::vector<Complex>& sigma);
/// Kind III with τ = {0, 1, -1}.
std::variant<WpRationalSolution, NoSolution> solve_type3(Complex c, const std::vector<Complex>& sigma);
/// Kind IV with τ = (0, 1, -1), the squared factor at 0.
std::variant<WpRationalSolution, NoSolution> solve_type4(Complex c, const std::vector<Complex>& sigma);

/// Kind V. Normalizes {τ1, τ2} to {1, -1} affinely; sin(αz + β) with α = √(2c).
std::variant<TrigSolution, Unresolved> solve_type5(Complex c, const CanonicalForm& form, Complex beta = 0.0);

/// S^p = A. α = √(-2 A^{1/p}), principal branches.
ExpSolution solve_type6(Complex A, int p);

/// First-order equation satisfied by a solution of a canonical form; K is
/// closed form for kind I and measured at a generic point otherwise.
SubequationSpec subequation_for(const CanonicalForm& form, const Solution& s);

struct SolveOptions {
  Complex z0 = 0.0;
  Complex beta = 0.0;
  std::optional<int> tau_index;  // kind I only, 1-based index into form.tau
  SamplingOptions certification{50, 1e-6, 42, 2.0, 1e-2};
};

struct SolveOutcome {
  CanonicalForm form;
  std::variant<Solution, NoSolution, Unresolved> result;
  ResidualReport certificate;  // meaningful only when result holds a Solution
};

/// Classify, normalize kinds II–V by a Möbius change of variable, construct
/// and certify. Throws Error(kInternalConsistency) when a constructed
/// solution fails its residual check and Error(kInvalidArgument) when the
/// equation is not canonical.
SolveOutcome solve(const SchwarzianEquation& eq, const SolveOptions& options = {});

}  // namespace schwarzian
