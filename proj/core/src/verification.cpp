#include "schwarzian/verification.hpp"

#include <algorithm>
#include <cmath>

#include "schwarzian/error.hpp"
#include "schwarzian/schwarzian.hpp"

namespace schwarzian {

PointSampler::PointSampler(std::uint64_t seed) : state_(seed) {}

double PointSampler::uniform() {
  // splitmix64
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return static_cast<double>(z >> 11) * 0x1.0p-53;
}

Complex PointSampler::in_square(double half_width) {
  const double x = (2.0 * uniform() - 1.0) * half_width;
  const double y = (2.0 * uniform() - 1.0) * half_width;
  return {x, y};
}

bool is_generic(const EvaluatedJet& e, double exclusion) {
  if (e.is_pole || e.at_lattice_point || !e.jet.is_finite()) return false;
  if (e.lattice_distance < exclusion) return false;
  const JetValue& j = e.jet;
  const double u = std::abs(j.f), du = std::abs(j.f1), ddu = std::abs(j.f2);
  if (du == 0.0) return false;
  // Near a simple pole u ≈ r/(z-p), so |u/u'| ≈ |z-p|.
  if (u > 1.0 && u / du < exclusion) return false;
  // Near a zero of u' of order k, |u'/u''| ≈ |z-zc|/k.
  if (ddu > 0.0 && du / ddu < exclusion) return false;
  return true;
}

std::vector<Complex> generic_points(const SolutionEvaluator& eval, const SamplingOptions& options,
                                    int* excluded) {
  if (options.samples < 1) throw Error(ErrorCode::kInvalidArgument, "samples must be >= 1");
  PointSampler sampler(options.seed);
  std::vector<Complex> points;
  int rejected = 0;
  const long max_draws = 50L * options.samples;
  for (long draw = 0; draw < max_draws && static_cast<int>(points.size()) < options.samples; ++draw) {
    const Complex z = sampler.in_square(options.half_width);
    if (is_generic(eval.evaluate(z), options.exclusion)) {
      points.push_back(z);
    } else {
      ++rejected;
    }
  }
  if (excluded) *excluded = rejected;
  return points;
}

PointResidual equation_residual(const SchwarzianEquation& eq, const JetValue& jet) {
  const Complex s = schwarzian_of_jet(jet);
  const ExtendedComplex r = eval_R(eq.R, jet.f);
  if (r.is_infinite()) throw Error(ErrorCode::kPoleProximity, "R(u) is infinite at this point");
  const double abs = std::abs(std::pow(s, eq.p) - r.value());
  return {abs, abs / unit_scale(r.value())};
}

namespace {

template <class Residual>
ResidualReport sweep(const SolutionEvaluator& eval, const SamplingOptions& options, Residual residual) {
  ResidualReport report;
  report.tolerance = options.tolerance;
  const std::vector<Complex> points = generic_points(eval, options, &report.excluded_points);
  for (const Complex z : points) {
    PointResidual r;
    try {
      r = residual(eval.jet(z));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kCriticalPoint && e.code() != ErrorCode::kPoleProximity) throw;
      ++report.excluded_points;
      continue;
    }
    ++report.sample_count;
    report.max_abs_residual = std::max(report.max_abs_residual, r.abs);
    if (r.rel > report.max_rel_residual || !std::isfinite(r.rel)) {
      report.max_rel_residual = std::isfinite(r.rel) ? r.rel : std::numeric_limits<double>::infinity();
      report.worst_point = z;
    }
  }
  report.pass = report.sample_count >= 1 && report.max_rel_residual <= options.tolerance;
  return report;
}

Complex factor_product(const std::vector<SubequationFactor>& factors, Complex u) {
  Complex prod = 1.0;
  for (const auto& f : factors) prod *= std::pow(u - f.root, f.multiplicity);
  return prod;
}

}  // namespace

ResidualReport verify_solution(const SchwarzianEquation& eq, const Solution& s,
                               const SamplingOptions& options) {
  const SolutionEvaluator eval(s);
  return sweep(eval, options, [&](const JetValue& jet) { return equation_residual(eq, jet); });
}

SubequationSpec SubequationSpec::make(int n, Complex K, std::vector<SubequationFactor> factors) {
  std::vector<int> pattern;
  for (const auto& f : factors) {
    if (f.multiplicity < 1) throw Error(ErrorCode::kInvalidArgument, "subequation: multiplicity must be >= 1");
    pattern.push_back(f.multiplicity);
  }
  std::sort(pattern.begin(), pattern.end());
  std::vector<int> expected;
  switch (n) {
    case 2: expected = {1, 1, 1, 1}; break;
    case 3: expected = {2, 2, 2}; break;
    case 4: expected = {2, 3, 3}; break;
    case 6: expected = {3, 4, 5}; break;
    default: throw Error(ErrorCode::kInvalidArgument, "subequation: n must be 2, 3, 4 or 6");
  }
  if (pattern != expected) {
    throw Error(ErrorCode::kInvalidArgument, "subequation: multiplicity pattern does not match n");
  }
  if (K == 0.0 || !is_finite(K)) {
    throw Error(ErrorCode::kInvalidArgument, "subequation: K must be finite and nonzero");
  }
  return {n, K, std::move(factors)};
}

Complex subequation_residual(const Solution& s, const SubequationSpec& spec, Complex z) {
  const JetValue jet = solution_jet(s, z);
  return std::pow(jet.f1, spec.n) - spec.K * factor_product(spec.factors, jet.f);
}

Complex estimate_subequation_constant(const Solution& s, int n,
                                      const std::vector<SubequationFactor>& factors, Complex z) {
  const JetValue jet = solution_jet(s, z);
  const Complex prod = factor_product(factors, jet.f);
  if (prod == 0.0) throw Error(ErrorCode::kCriticalPoint, "subequation constant: u sits on a root");
  return std::pow(jet.f1, n) / prod;
}

ResidualReport verify_subequation(const Solution& s, const SubequationSpec& spec,
                                  const SamplingOptions& options) {
  const SolutionEvaluator eval(s);
  return sweep(eval, options, [&](const JetValue& jet) {
    const Complex lhs = std::pow(jet.f1, spec.n);
    const double abs = std::abs(lhs - spec.K * factor_product(spec.factors, jet.f));
    return PointResidual{abs, abs / std::max(1.0, std::abs(lhs))};
  });
}

}  // namespace schwarzian
