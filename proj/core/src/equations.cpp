#include "schwarzian/equations.hpp"

#include <algorithm>
#include <sstream>

#include "schwarzian/error.hpp"

namespace schwarzian {
namespace {

// Exact division by (u - c)^k, dropping the remainder.
PolynomialC deflate(const PolynomialC& p, Complex c, int k) {
  std::vector<Complex> a = p.coefficients();
  for (int step = 0; step < k && a.size() > 1; ++step) {
    std::vector<Complex> b(a.size() - 1);
    Complex carry{};
    for (std::size_t i = a.size() - 1; i >= 1; --i) {
      carry = a[i] + c * carry;
      b[i - 1] = carry;
    }
    a = std::move(b);
  }
  return PolynomialC(std::move(a));
}

std::vector<int> multiplicities(const std::vector<RootCluster>& clusters) {
  std::vector<int> m;
  for (const auto& c : clusters) m.push_back(c.multiplicity);
  std::sort(m.begin(), m.end(), std::greater<>());
  return m;
}

bool all_divisible(const std::vector<RootCluster>& clusters, int k) {
  return std::all_of(clusters.begin(), clusters.end(),
                     [k](const RootCluster& c) { return c.multiplicity % k == 0; });
}

// Each cluster value repeated multiplicity / k times.
std::vector<Complex> expand(const std::vector<RootCluster>& clusters, int k) {
  std::vector<Complex> out;
  for (const auto& c : clusters) out.insert(out.end(), static_cast<std::size_t>(c.multiplicity / k), c.value);
  return out;
}

// τ ordered by descending multiplicity; ties keep the (real, imag) order.
std::vector<Complex> by_multiplicity(std::vector<RootCluster> clusters) {
  std::stable_sort(clusters.begin(), clusters.end(), [](const RootCluster& a, const RootCluster& b) {
    return a.multiplicity > b.multiplicity;
  });
  std::vector<Complex> out;
  for (const auto& c : clusters) out.push_back(c.value);
  return out;
}

PolynomialC product_of_powers(const std::vector<Complex>& roots, const std::vector<int>& powers) {
  PolynomialC out = PolynomialC::constant(1.0);
  for (std::size_t i = 0; i < roots.size(); ++i) {
    out = out * pow(PolynomialC({-roots[i], 1.0}), powers[i]);
  }
  return out;
}

}  // namespace

RationalFunctionC::RationalFunctionC(PolynomialC numerator, PolynomialC denominator)
    : num_(std::move(numerator)), den_(std::move(denominator)) {
  if (den_.is_zero()) throw Error(ErrorCode::kInvalidArgument, "rational function: zero denominator");
  if (num_.is_zero()) {
    den_ = PolynomialC::constant(1.0);
    return;
  }
  if (num_.degree() < 1 || den_.degree() < 1) return;
  try {
    const auto num_roots = clustered_roots(num_);
    const auto den_roots = clustered_roots(den_);
    for (const auto& nr : num_roots) {
      for (const auto& dr : den_roots) {
        if (std::abs(nr.value - dr.value) < 1e-7 * std::max({1.0, std::abs(nr.value), std::abs(dr.value)})) {
          const int k = std::min(nr.multiplicity, dr.multiplicity);
          num_ = deflate(num_, nr.value, k);
          den_ = deflate(den_, dr.value, k);
        }
      }
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kAmbiguousMultiplicity) throw;
  }
}

ExtendedComplex eval_R(const RationalFunctionC& r, const ExtendedComplex& w) {
  const PolynomialC& P = r.numerator();
  const PolynomialC& Q = r.denominator();
  if (P.is_zero()) return 0.0;
  if (w.is_infinite()) {
    if (P.degree() > Q.degree()) return ExtendedComplex::infinity();
    if (P.degree() < Q.degree()) return 0.0;
    return P.leading() / Q.leading();
  }
  const Complex q = Q(w.value());
  if (q == 0.0) return ExtendedComplex::infinity();
  const Complex value = P(w.value()) / q;
  if (!is_finite(value)) return ExtendedComplex::infinity();
  return value;
}

SchwarzianEquation::SchwarzianEquation(int power, RationalFunctionC rhs) : p(power), R(std::move(rhs)) {
  if (p < 1) throw Error(ErrorCode::kInvalidArgument, "Schwarzian equation exponent must be >= 1");
}

const char* to_string(CanonicalKind kind) noexcept {
  switch (kind) {
    case CanonicalKind::kI: return "I";
    case CanonicalKind::kII: return "II";
    case CanonicalKind::kIII: return "III";
    case CanonicalKind::kIV: return "IV";
    case CanonicalKind::kV: return "V";
    case CanonicalKind::kVI: return "VI";
  }
  return "?";
}

std::optional<CanonicalKind> parse_kind(const std::string& s) {
  for (const auto k : {CanonicalKind::kI, CanonicalKind::kII, CanonicalKind::kIII, CanonicalKind::kIV,
                       CanonicalKind::kV, CanonicalKind::kVI}) {
    if (s == to_string(k)) return k;
  }
  return std::nullopt;
}

int canonical_power(CanonicalKind kind) noexcept {
  switch (kind) {
    case CanonicalKind::kII:
    case CanonicalKind::kIII: return 3;
    case CanonicalKind::kIV: return 2;
    default: return 1;
  }
}

SchwarzianEquation CanonicalForm::to_equation() const {
  const auto check_sizes = [&](std::size_t max_sigma, std::size_t min_sigma, std::size_t n_tau) {
    if (sigma.size() > max_sigma || sigma.size() < min_sigma || tau.size() != n_tau) {
      std::ostringstream msg;
      msg << "kind " << to_string(kind) << " expects " << n_tau << " tau values and "
          << (min_sigma == max_sigma ? std::to_string(max_sigma)
                                     : std::to_string(min_sigma) + ".." + std::to_string(max_sigma))
          << " sigma values";
      throw Error(ErrorCode::kInvalidArgument, msg.str());
    }
  };
  for (std::size_t i = 0; i < tau.size(); ++i) {
    for (std::size_t j = i + 1; j < tau.size(); ++j) {
      if (std::abs(tau[i] - tau[j]) <= 1e-12 * std::max(unit_scale(tau[i]), unit_scale(tau[j]))) {
        throw Error(ErrorCode::kInvalidArgument, "tau values must be distinct");
      }
    }
  }
  std::vector<int> sigma_pow, tau_pow;
  switch (kind) {
    case CanonicalKind::kI:
      check_sizes(4, 0, 4);
      sigma_pow.assign(sigma.size(), 1);
      tau_pow = {1, 1, 1, 1};
      break;
    case CanonicalKind::kII:
      check_sizes(2, 2, 3);
      sigma_pow = {3, 3};
      tau_pow = {3, 2, 1};
      break;
    case CanonicalKind::kIII:
      check_sizes(2, 2, 3);
      sigma_pow = {3, 3};
      tau_pow = {2, 2, 2};
      break;
    case CanonicalKind::kIV:
      check_sizes(2, 2, 3);
      sigma_pow = {2, 2};
      tau_pow = {2, 1, 1};
      break;
    case CanonicalKind::kV:
      check_sizes(2, 2, 2);
      sigma_pow = {1, 1};
      tau_pow = {1, 1};
      break;
    case CanonicalKind::kVI:
      check_sizes(0, 0, 0);
      return {p, RationalFunctionC::constant(c)};
  }
  if (c == 0.0) throw Error(ErrorCode::kInvalidArgument, "canonical constant c must be nonzero");
  return {canonical_power(kind),
          RationalFunctionC(c * product_of_powers(sigma, sigma_pow), product_of_powers(tau, tau_pow))};
}

Classification classify(const SchwarzianEquation& eq) {
  const PolynomialC& P = eq.R.numerator();
  const PolynomialC& Q = eq.R.denominator();

  if (eq.R.is_constant()) {
    CanonicalForm form;
    form.kind = CanonicalKind::kVI;
    form.p = eq.p;
    form.c = P.is_zero() ? Complex{} : P.leading() / Q.leading();
    return form;
  }

  const auto num = clustered_roots(P);
  const auto den = clustered_roots(Q);
  const std::vector<int> num_pattern = multiplicities(num);
  const std::vector<int> den_pattern = multiplicities(den);

  CanonicalForm form;
  form.p = eq.p;
  form.c = P.leading() / Q.leading();
  const auto sorted_tau = [&] {
    std::vector<Complex> t;
    for (const auto& c : den) t.push_back(c.value);
    return t;
  };

  const auto fail = [&](std::string reason) -> Classification {
    return NotCanonical{eq.p, num_pattern, den_pattern, std::move(reason)};
  };

  if (eq.p == 1 && den_pattern == std::vector<int>{1, 1, 1, 1} && P.degree() <= 4) {
    form.kind = CanonicalKind::kI;
    form.sigma = expand(num, 1);
    form.tau = sorted_tau();
    return form;
  }
  if (eq.p == 1 && den_pattern == std::vector<int>{1, 1} && P.degree() == 2) {
    form.kind = CanonicalKind::kV;
    form.sigma = expand(num, 1);
    form.tau = sorted_tau();
    return form;
  }
  if (eq.p == 3 && P.degree() == 6 && all_divisible(num, 3)) {
    if (den_pattern == std::vector<int>{3, 2, 1}) {
      form.kind = CanonicalKind::kII;
      form.sigma = expand(num, 3);
      form.tau = by_multiplicity(den);
      return form;
    }
    if (den_pattern == std::vector<int>{2, 2, 2}) {
      form.kind = CanonicalKind::kIII;
      form.sigma = expand(num, 3);
      form.tau = sorted_tau();
      return form;
    }
  }
  if (eq.p == 2 && P.degree() == 4 && all_divisible(num, 2) && den_pattern == std::vector<int>{2, 1, 1}) {
    form.kind = CanonicalKind::kIV;
    form.sigma = expand(num, 2);
    form.tau = by_multiplicity(den);
    return form;
  }
  return fail("no canonical shape matches this exponent and root pattern");
}

SchwarzianEquation transform_equation(const SchwarzianEquation& eq, const MobiusTransform& m) {
  const PolynomialC& P = eq.R.numerator();
  const PolynomialC& Q = eq.R.denominator();
  const int n = std::max(P.degree(), Q.degree());
  const PolynomialC lin_num({m.b(), m.a()});
  const PolynomialC lin_den({m.d(), m.c()});
  const auto compose = [&](const PolynomialC& poly) {
    PolynomialC out;
    for (int k = 0; k <= poly.degree(); ++k) {
      out = out + poly[static_cast<std::size_t>(k)] * (pow(lin_num, k) * pow(lin_den, n - k));
    }
    return out;
  };
  if (n <= 0) return eq;
  return {eq.p, RationalFunctionC(compose(P), compose(Q))};
}

ElementarySymmetric elementary_symmetric(const std::array<Complex, 4>& t) {
  ElementarySymmetric e{};
  e.e1 = t[0] + t[1] + t[2] + t[3];
  e.e2 = t[0] * t[1] + t[0] * t[2] + t[0] * t[3] + t[1] * t[2] + t[1] * t[3] + t[2] * t[3];
  e.e3 = t[0] * t[1] * t[2] + t[0] * t[1] * t[3] + t[0] * t[2] * t[3] + t[1] * t[2] * t[3];
  e.e4 = t[0] * t[1] * t[2] * t[3];
  return e;
}

Complex q_factor(const std::array<Complex, 4>& tau, int i) {
  if (i < 1 || i > 4) throw Error(ErrorCode::kInvalidArgument, "q_factor: index must be in 1..4");
  for (std::size_t j = 0; j < 4; ++j) {
    for (std::size_t l = j + 1; l < 4; ++l) {
      if (std::abs(tau[j] - tau[l]) <= 1e-12 * std::max(unit_scale(tau[j]), unit_scale(tau[l]))) {
        throw Error(ErrorCode::kInvalidArgument, "q_factor: tau values must be distinct");
      }
    }
  }
  const std::size_t k = static_cast<std::size_t>(i - 1);
  Complex q = 1.0;
  for (std::size_t j = 0; j < 4; ++j) {
    if (j != k) q *= tau[k] - tau[j];
  }
  return q;
}

TypeICoefficients TypeICoefficients::from_form(const CanonicalForm& form) {
  if (form.kind != CanonicalKind::kI || form.tau.size() != 4 || form.sigma.size() > 4) {
    throw Error(ErrorCode::kInvalidArgument, "TypeICoefficients: form is not of kind I");
  }
  TypeICoefficients out;
  const PolynomialC num = PolynomialC::from_roots(form.sigma, form.c);
  for (std::size_t k = 0; k < 5; ++k) out.r[k] = num[k];
  std::copy(form.tau.begin(), form.tau.end(), out.tau.begin());
  return out;
}

}  // namespace schwarzian
