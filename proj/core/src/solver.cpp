#include "schwarzian/solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "schwarzian/error.hpp"

namespace schwarzian {
namespace {

std::array<Complex, 4> to_array4(const std::vector<Complex>& v) {
  if (v.size() != 4) throw Error(ErrorCode::kInvalidArgument, "expected four tau values");
  return {v[0], v[1], v[2], v[3]};
}

double max_abs(const std::array<Complex, 5>& r) {
  double m = 0.0;
  for (const Complex x : r) m = std::max(m, std::abs(x));
  return m;
}

// {s, -s} as a multiset, within kSigmaTolerance.
bool is_pair_pm(const std::vector<Complex>& sigma, Complex s) {
  if (sigma.size() != 2) return false;
  const auto close = [&](Complex x, Complex y) {
    return is_finite(x) && std::abs(x - y) <= kSigmaTolerance * std::max(1.0, std::abs(y));
  };
  return (close(sigma[0], s) && close(sigma[1], -s)) || (close(sigma[0], -s) && close(sigma[1], s));
}

void require_nonzero_c(Complex c) {
  if (c == 0.0 || !is_finite(c)) throw Error(ErrorCode::kInvalidArgument, "c must be finite and nonzero");
}

// Principal n-th root; a negative zero imaginary part would select the
// conjugate branch of the cut, so it is cleared first.
Complex principal_root(Complex z, int n) {
  z = {z.real() + 0.0, z.imag() + 0.0};
  return n == 2 ? std::sqrt(z) : std::pow(z, 1.0 / n);
}

std::string format_complex(Complex z) {
  std::ostringstream os;
  os.precision(6);
  os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
  return os.str();
}

EllipticFractionalSolution type1_solution(const std::array<Complex, 4>& tau, int i, Complex b) {
  const Type1Parameters par = type1_parameters(tau, i, b);
  EllipticFractionalSolution s;
  s.a = tau[static_cast<std::size_t>(i - 1)];
  s.b = b;
  s.d = par.d;
  s.inv = {par.g2, par.g3};
  return s;
}

struct Type1Attempt {
  std::optional<EllipticFractionalSolution> solution;
  std::string diagnostic;
};

Type1Attempt attempt_type1(const TypeICoefficients& coeffs, int i, const std::array<Complex, 5>& B) {
  const Complex q = q_factor(coeffs.tau, i);
  const double r_norm = max_abs(coeffs.r);

  std::size_t pick = 4;
  for (const std::size_t k : {4u, 3u, 1u, 0u}) {
    if (std::abs(B[k]) > std::abs(B[pick])) pick = k;
  }
  if (std::abs(B[pick]) == 0.0) pick = 2;
  const Complex b = q * coeffs.r[pick] / B[pick];

  std::ostringstream diag;
  diag << "i=" << i << " (a=" << format_complex(coeffs.tau[static_cast<std::size_t>(i - 1)]) << "): ";
  if (b == 0.0 || !is_finite(b)) {
    diag << "b extracted from r" << pick << " is zero";
    return {std::nullopt, diag.str()};
  }
  double worst = 0.0;
  for (std::size_t k = 0; k < 5; ++k) {
    worst = std::max(worst, std::abs(coeffs.r[k] - b / q * B[k]) / r_norm);
  }
  if (worst > kRelationTolerance) {
    diag << "max relative relation residual " << worst;
    return {std::nullopt, diag.str()};
  }
  EllipticFractionalSolution s = type1_solution(coeffs.tau, i, b);
  const Complex delta = type1_discriminant(coeffs.tau, i, b);
  const Complex delta_inv = s.inv.discriminant();
  if (!s.inv.is_nondegenerate() || std::abs(delta_inv - delta) > kRelationTolerance * std::abs(delta)) {
    diag << "discriminant check failed";
    return {std::nullopt, diag.str()};
  }
  return {s, {}};
}

std::array<Complex, 5> checked_brackets(const TypeICoefficients& coeffs) {
  for (const Complex x : coeffs.r) {
    if (!is_finite(x)) throw Error(ErrorCode::kInvalidArgument, "type I coefficients must be finite");
  }
  if (max_abs(coeffs.r) == 0.0) throw Error(ErrorCode::kInvalidArgument, "type I coefficients are all zero");
  for (int i = 1; i <= 4; ++i) q_factor(coeffs.tau, i);  // distinctness
  const std::array<Complex, 5> B = type1_brackets(elementary_symmetric(coeffs.tau));
  double scale = 1.0;
  for (const Complex t : coeffs.tau) scale = std::max(scale, std::abs(t));
  bool all_small = true;
  const int degree[5] = {6, 5, 4, 3, 2};
  for (std::size_t k = 0; k < 5; ++k) {
    if (std::abs(B[k]) > 1e-13 * std::pow(scale, degree[k])) all_small = false;
  }
  if (all_small) throw Error(ErrorCode::kDegenerateRelations, "all relation brackets vanish for this tau");
  return B;
}

WpRationalSolution wp_solution(WpFamily family, Complex c, Complex L, WeierstrassInvariants inv) {
  WpRationalSolution s;
  s.family = family;
  s.c = c;
  s.L = L;
  s.inv = inv;
  return s;
}

}  // namespace

std::array<Complex, 5> type1_brackets(const ElementarySymmetric& e) {
  return {
      0.5 * (3.0 * e.e3 * e.e3 - 8.0 * e.e2 * e.e4),
      2.0 * (6.0 * e.e1 * e.e4 - e.e2 * e.e3),
      2.0 * e.e2 * e.e2 - 3.0 * e.e1 * e.e3 - 24.0 * e.e4,
      2.0 * (6.0 * e.e3 - e.e1 * e.e2),
      0.5 * (3.0 * e.e1 * e.e1 - 8.0 * e.e2),
  };
}

Type1Parameters type1_parameters(const std::array<Complex, 4>& tau, int i, Complex b) {
  const Complex q = q_factor(tau, i);
  const ElementarySymmetric e = elementary_symmetric(tau);
  const std::size_t k = static_cast<std::size_t>(i - 1);
  Complex others = 0.0, against = 0.0;
  for (std::size_t j = 0; j < 4; ++j) {
    if (j == k) continue;
    against += 2.0 * (tau[k] - tau[j]) * (tau[k] - tau[j]);
    for (std::size_t l = j + 1; l < 4; ++l) {
      if (l == k) continue;
      others += (tau[j] - tau[l]) * (tau[j] - tau[l]);
    }
  }
  const Complex bq = b / q;
  Type1Parameters out;
  out.d = bq / 6.0 * (others - against);
  out.g2 = 4.0 * bq * bq / 3.0 * (e.e2 * e.e2 - 3.0 * e.e1 * e.e3 + 12.0 * e.e4);
  out.g3 = 4.0 * bq * bq * bq / 27.0 *
           (2.0 * e.e2 * e.e2 * e.e2 - 9.0 * e.e1 * e.e2 * e.e3 - 72.0 * e.e2 * e.e4 +
            27.0 * e.e3 * e.e3 + 27.0 * e.e1 * e.e1 * e.e4);
  return out;
}

Complex type1_discriminant(const std::array<Complex, 4>& tau, int i, Complex b) {
  const Complex bq = b / q_factor(tau, i);
  Complex prod = 1.0;
  for (std::size_t j = 0; j < 4; ++j) {
    for (std::size_t l = j + 1; l < 4; ++l) prod *= (tau[j] - tau[l]) * (tau[j] - tau[l]);
  }
  return 16.0 * std::pow(bq, 6) * prod;
}

Complex type1_subequation_constant(const std::array<Complex, 4>& tau, int i, Complex b) {
  return -4.0 * b / q_factor(tau, i);
}

Type1Generated generate_type1(const std::array<Complex, 4>& tau, int i, Complex b) {
  if (b == 0.0 || !is_finite(b)) throw Error(ErrorCode::kInvalidArgument, "generate_type1: b must be finite and nonzero");
  const Complex q = q_factor(tau, i);
  const std::array<Complex, 5> B = type1_brackets(elementary_symmetric(tau));
  Type1Generated out;
  out.coefficients.tau = tau;
  for (std::size_t k = 0; k < 5; ++k) out.coefficients.r[k] = b / q * B[k];
  out.solution = type1_solution(tau, i, b);
  const Complex delta = type1_discriminant(tau, i, b);
  if (!out.solution.inv.is_nondegenerate() ||
      std::abs(out.solution.inv.discriminant() - delta) > kRelationTolerance * std::abs(delta)) {
    throw Error(ErrorCode::kInternalConsistency, "generate_type1: discriminant identity violated");
  }
  return out;
}

std::variant<EllipticFractionalSolution, NoSolution> solve_type1(const TypeICoefficients& coeffs,
                                                                 std::optional<int> tau_index) {
  const std::array<Complex, 5> B = checked_brackets(coeffs);
  if (tau_index && (*tau_index < 1 || *tau_index > 4)) {
    throw Error(ErrorCode::kInvalidArgument, "tau index must be in 1..4");
  }
  NoSolution none{"type I parameter relations do not hold", {}};
  for (int i = 1; i <= 4; ++i) {
    if (tau_index && *tau_index != i) continue;
    Type1Attempt at = attempt_type1(coeffs, i, B);
    if (at.solution) return *at.solution;
    none.diagnostics.push_back(std::move(at.diagnostic));
  }
  return none;
}

std::vector<EllipticFractionalSolution> solve_type1_all(const TypeICoefficients& coeffs) {
  const std::array<Complex, 5> B = checked_brackets(coeffs);
  std::vector<EllipticFractionalSolution> out;
  for (int i = 1; i <= 4; ++i) {
    Type1Attempt at = attempt_type1(coeffs, i, B);
    if (at.solution) out.push_back(*at.solution);
  }
  return out;
}

std::variant<WpRationalSolution, NoSolution> solve_type2(Complex c, const std::vector<Complex>& sigma) {
  require_nonzero_c(c);
  if (!is_pair_pm(sigma, Complex(0.0, std::sqrt(5.0)))) {
    return NoSolution{"sigma pattern inadmissible for kind II (requires {sqrt(5)i, -sqrt(5)i})", {}};
  }
  return wp_solution(WpFamily::kII, c, 0.0, {0.0, c / 10584.0});
}

std::variant<WpRationalSolution, NoSolution> solve_type3(Complex c, const std::vector<Complex>& sigma) {
  require_nonzero_c(c);
  if (!is_pair_pm(sigma, Complex(0.0, 1.0 / std::sqrt(3.0)))) {
    return NoSolution{"sigma pattern inadmissible for kind III (requires {i/sqrt(3), -i/sqrt(3)})", {}};
  }
  const Complex L = principal_root(-27.0 * c / 64.0, 6);
  return wp_solution(WpFamily::kIII, c, L, {0.0, c / 432.0});
}

std::variant<WpRationalSolution, NoSolution> solve_type4(Complex c, const std::vector<Complex>& sigma) {
  require_nonzero_c(c);
  if (!is_pair_pm(sigma, Complex(0.0, 0.5))) {
    return NoSolution{"sigma pattern inadmissible for kind IV (requires {i/2, -i/2})", {}};
  }
  const Complex L = principal_root(4.0 * c / 9.0, 4);
  return wp_solution(WpFamily::kIV, c, L, {-c / 36.0, 0.0});
}

std::variant<TrigSolution, Unresolved> solve_type5(Complex c, const CanonicalForm& form, Complex beta) {
  require_nonzero_c(c);
  if (form.kind != CanonicalKind::kV || form.tau.size() != 2 || form.sigma.size() != 2) {
    throw Error(ErrorCode::kInvalidArgument, "solve_type5: form is not of kind V");
  }
  // larger τ goes to 1, so τ = (-1, 1) needs no outer map
  const auto [lo, hi] = std::minmax(form.tau[0], form.tau[1], lex_less);
  const Complex A = (hi - lo) / 2.0;
  const Complex B = (form.tau[0] + form.tau[1]) / 2.0;
  const std::vector<Complex> sigma{(form.sigma[0] - B) / A, (form.sigma[1] - B) / A};
  if (!is_pair_pm(sigma, Complex(0.0, std::sqrt(2.0)))) {
    return Unresolved{"sigma pattern is not {sqrt(2)i, -sqrt(2)i} after normalizing tau to {1, -1}; "
                      "solutions without a Picard exceptional value are not characterized"};
  }
  TrigSolution s;
  s.alpha = principal_root(2.0 * c, 2);
  s.beta = beta;
  s.outer = MobiusTransform(A, B, 0.0, 1.0);
  return s;
}

ExpSolution solve_type6(Complex A, int p) {
  if (p < 1) throw Error(ErrorCode::kInvalidArgument, "p must be >= 1");
  if (!is_finite(A)) throw Error(ErrorCode::kInvalidArgument, "constant must be finite");
  if (A == 0.0) {
    throw Error(ErrorCode::kNoTranscendentalSolution, "S = 0 is solved only by Mobius maps");
  }
  ExpSolution s;
  s.alpha = principal_root(-2.0 * principal_root(A, p), 2);
  return s;
}

SubequationSpec subequation_for(const CanonicalForm& form, const Solution& s) {
  std::vector<int> mult;
  int n = 0;
  switch (form.kind) {
    case CanonicalKind::kI: n = 2; mult = {1, 1, 1, 1}; break;
    case CanonicalKind::kII: n = 6; mult = {3, 4, 5}; break;
    case CanonicalKind::kIII: n = 3; mult = {2, 2, 2}; break;
    case CanonicalKind::kIV: n = 4; mult = {2, 3, 3}; break;
    default: throw Error(ErrorCode::kInvalidArgument, "no first-order subequation for kinds V and VI");
  }
  if (form.tau.size() != mult.size()) throw Error(ErrorCode::kInvalidArgument, "form has the wrong number of tau");
  std::vector<SubequationFactor> factors;
  for (std::size_t k = 0; k < mult.size(); ++k) factors.push_back({form.tau[k], mult[k]});

  if (const auto* ef = std::get_if<EllipticFractionalSolution>(&s);
      ef && form.kind == CanonicalKind::kI && outer_map(s).is_identity()) {
    const std::array<Complex, 4> tau = to_array4(form.tau);
    for (int i = 1; i <= 4; ++i) {
      const Complex t = tau[static_cast<std::size_t>(i - 1)];
      if (std::abs(t - ef->a) <= 1e-12 * unit_scale(t)) {
        return SubequationSpec::make(2, type1_subequation_constant(tau, i, ef->b), std::move(factors));
      }
    }
  }
  const SolutionEvaluator eval(s);
  SamplingOptions opts;
  opts.samples = 1;
  opts.seed = 7;
  const std::vector<Complex> pts = generic_points(eval, opts);
  if (pts.empty()) throw Error(ErrorCode::kInternalConsistency, "no generic point found for subequation constant");
  const Complex K = estimate_subequation_constant(s, n, factors, pts.front());
  return SubequationSpec::make(n, K, std::move(factors));
}

namespace {

// m with m(target_k) = tau_k, or nullopt when τ already equals the target.
std::optional<MobiusTransform> normalizer(const std::vector<Complex>& tau, const std::array<Complex, 3>& target) {
  bool same = true;
  for (std::size_t k = 0; k < 3; ++k) {
    if (std::abs(tau[k] - target[k]) > 1e-12 * unit_scale(target[k])) same = false;
  }
  if (same) return std::nullopt;
  return MobiusTransform::from_points(target, {tau[0], tau[1], tau[2]});
}

using WpResult = std::variant<WpRationalSolution, NoSolution>;

std::variant<Solution, NoSolution, Unresolved> solve_wp_kind(const SchwarzianEquation& eq, const CanonicalForm& form,
                                                             const SolveOptions& options) {
  std::array<Complex, 3> target;
  WpResult (*solver)(Complex, const std::vector<Complex>&) = nullptr;
  switch (form.kind) {
    case CanonicalKind::kII:
      target = {4.0, -3.0, 0.0};
      solver = &solve_type2;
      break;
    case CanonicalKind::kIII:
      target = {-1.0, 0.0, 1.0};
      solver = &solve_type3;
      break;
    default:
      target = {0.0, 1.0, -1.0};
      solver = &solve_type4;
      break;
  }
  const std::optional<MobiusTransform> m = normalizer(form.tau, target);
  Complex c = form.c;
  std::vector<Complex> sigma = form.sigma;
  if (m) {
    const MobiusTransform back = inverse(*m);
    for (Complex& s : sigma) {
      const ExtendedComplex v = back.apply(s);
      if (v.is_infinite()) {
        return NoSolution{std::string("sigma pattern inadmissible for kind ") + to_string(form.kind) +
                              " (a sigma value normalizes to infinity)",
                          {}};
      }
      s = v.value();
    }
    // c' is the leading ratio of the transformed equation; σ' above is more
    // accurate than re-rooting it.
    const Classification cl = classify(transform_equation(eq, *m));
    const auto* nf = std::get_if<CanonicalForm>(&cl);
    if (!nf || nf->kind != form.kind) {
      throw Error(ErrorCode::kInternalConsistency, "normalized equation changed kind");
    }
    c = nf->c;
  }
  WpResult r = solver(c, sigma);
  if (auto* none = std::get_if<NoSolution>(&r)) return *none;
  WpRationalSolution s = std::get<WpRationalSolution>(r);
  s.z0 = options.z0;
  if (m) s.outer = *m;
  return Solution{s};
}

}  // namespace

SolveOutcome solve(const SchwarzianEquation& eq, const SolveOptions& options) {
  const Classification cl = classify(eq);
  if (const auto* nc = std::get_if<NotCanonical>(&cl)) {
    throw Error(ErrorCode::kInvalidArgument, "equation is not canonical: " + nc->reason);
  }
  SolveOutcome out;
  out.form = std::get<CanonicalForm>(cl);
  const CanonicalForm& form = out.form;

  switch (form.kind) {
    case CanonicalKind::kI: {
      auto r = solve_type1(TypeICoefficients::from_form(form), options.tau_index);
      if (auto* s = std::get_if<EllipticFractionalSolution>(&r)) {
        s->z0 = options.z0;
        out.result = Solution{*s};
      } else {
        out.result = std::get<NoSolution>(r);
      }
      break;
    }
    case CanonicalKind::kII:
    case CanonicalKind::kIII:
    case CanonicalKind::kIV:
      out.result = solve_wp_kind(eq, form, options);
      break;
    case CanonicalKind::kV: {
      auto r = solve_type5(form.c, form, options.beta);
      if (auto* s = std::get_if<TrigSolution>(&r)) {
        out.result = Solution{*s};
      } else {
        out.result = std::get<Unresolved>(r);
      }
      break;
    }
    case CanonicalKind::kVI:
      out.result = Solution{solve_type6(form.c, form.p)};
      if (options.z0 != 0.0) out.result = translate(std::get<Solution>(out.result), options.z0);
      break;
  }

  if (const auto* s = std::get_if<Solution>(&out.result)) {
    out.certificate = verify_solution(eq, *s, options.certification);
    if (!out.certificate.pass) {
      std::ostringstream msg;
      msg << "constructed " << family_name(*s) << " solution failed certification (max relative residual "
          << out.certificate.max_rel_residual << " over " << out.certificate.sample_count << " points)";
      throw Error(ErrorCode::kInternalConsistency, msg.str());
    }
  }
  return out;
}

}  // namespace schwarzian
