#include "schwarzian/weierstrass.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "schwarzian/error.hpp"

namespace schwarzian {
namespace {

constexpr int kLaurentTerms = 40;
constexpr int kMaxHalvings = 64;

double cross(Complex a, Complex b) { return a.real() * b.imag() - a.imag() * b.real(); }

void require_finite(Complex z, const char* what) {
  if (!is_finite(z)) {
    throw Error(ErrorCode::kInvalidArgument, std::string(what) + " must be finite");
  }
}

// Root of t^3 + p t + q with Newton polish.
Complex polish_depressed(Complex t, Complex p, Complex q) {
  for (int it = 0; it < 3; ++it) {
    const Complex f = (t * t + p) * t + q;
    const Complex df = 3.0 * t * t + p;
    if (std::abs(df) == 0.0) break;
    const Complex step = f / df;
    t -= step;
    if (std::abs(step) <= 1e-16 * unit_scale(t)) break;
  }
  return t;
}

}  // namespace

bool WeierstrassInvariants::is_nondegenerate() const {
  const double scale = std::max({std::pow(std::abs(g2), 3.0), std::norm(g3), 1.0});
  return std::abs(discriminant()) > kDiscriminantTolerance * scale;
}

std::vector<RootWithMultiplicity> StationaryValues::distinct() const {
  std::vector<RootWithMultiplicity> out;
  for (const Complex r : roots) {
    if (!out.empty() && out.back().value == r) {
      ++out.back().multiplicity;
    } else {
      out.push_back({r, 1});
    }
  }
  return out;
}

Complex carlson_rf(Complex x, Complex y, Complex z) {
  constexpr double kTol = 1e-12;
  const auto on_negative_axis = [](Complex w) { return w.imag() == 0.0 && w.real() < 0.0; };
  if (on_negative_axis(x) || on_negative_axis(y) || on_negative_axis(z)) {
    throw Error(ErrorCode::kInvalidArgument, "carlson_rf: argument on the negative real axis");
  }
  const int zeros = (x == 0.0) + (y == 0.0) + (z == 0.0);
  if (zeros > 1) throw Error(ErrorCode::kInvalidArgument, "carlson_rf: more than one zero argument");

  Complex a = (x + y + z) / 3.0;
  const double q = std::pow(3.0 * kTol, -1.0 / 6.0) *
                   std::max({std::abs(a - x), std::abs(a - y), std::abs(a - z)});
  double pow4 = 1.0;
  for (int it = 0; it < 200; ++it) {
    if (pow4 * q <= std::abs(a)) break;
    const Complex sx = std::sqrt(x), sy = std::sqrt(y), sz = std::sqrt(z);
    const Complex lambda = sx * sy + sy * sz + sz * sx;
    x = 0.25 * (x + lambda);
    y = 0.25 * (y + lambda);
    z = 0.25 * (z + lambda);
    a = 0.25 * (a + lambda);
    pow4 *= 0.25;
  }
  const Complex dx = (a - x) / a, dy = (a - y) / a;
  const Complex dz = -(dx + dy);
  const Complex e2 = dx * dy - dz * dz;
  const Complex e3 = dx * dy * dz;
  return (1.0 - e2 / 10.0 + e3 / 14.0 + e2 * e2 / 24.0 - 3.0 * e2 * e3 / 44.0) / std::sqrt(a);
}

std::vector<Complex> laurent_coefficients(const WeierstrassInvariants& inv, int order) {
  if (order < 2) throw Error(ErrorCode::kInvalidArgument, "laurent_coefficients: order must be >= 2");
  // c[k] holds c_k; indices 0 and 1 unused.
  std::vector<Complex> c(static_cast<std::size_t>(order) + 1, Complex{});
  c[2] = inv.g2 / 20.0;
  if (order >= 3) c[3] = inv.g3 / 28.0;
  for (int k = 4; k <= order; ++k) {
    Complex sum{};
    for (int m = 2; m <= k - 2; ++m) sum += c[m] * c[k - m];
    c[k] = 3.0 / ((2.0 * k + 1.0) * (k - 3.0)) * sum;
  }
  return {c.begin() + 2, c.end()};
}

StationaryValues stationary_values(const WeierstrassInvariants& inv) {
  StationaryValues out;
  if (!inv.is_nondegenerate()) {
    out.degenerate = true;
    if (inv.g2 == 0.0) {
      out.roots = {Complex{}, Complex{}, Complex{}};
    } else {
      // 4(t - s)^2 (t + 2s) has g2 = 12 s^2, g3 = -8 s^3.
      const Complex s = -1.5 * inv.g3 / inv.g2;
      out.roots = {s, s, -2.0 * s};
    }
  } else {
    // Depressed cubic t^3 + p t + q.
    const Complex p = -inv.g2 / 4.0;
    const Complex q = -inv.g3 / 4.0;
    const Complex sq = std::sqrt(0.25 * q * q + p * p * p / 27.0);
    Complex base = -0.5 * q + sq;
    if (std::abs(-0.5 * q - sq) > std::abs(base)) base = -0.5 * q - sq;
    const Complex a = std::pow(base, 1.0 / 3.0);
    const Complex w = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
    Complex rot = 1.0;
    for (auto& r : out.roots) {
      const Complex ak = a * rot;
      r = polish_depressed(ak - p / (3.0 * ak), p, q);
      rot *= w;
    }
  }
  std::sort(out.roots.begin(), out.roots.end(), lex_less);
  return out;
}

LatticeData half_periods(const WeierstrassInvariants& inv) {
  require_finite(inv.g2, "g2");
  require_finite(inv.g3, "g3");
  if (!inv.is_nondegenerate()) {
    throw Error(ErrorCode::kDegenerateLattice, "half_periods: discriminant vanishes");
  }
  const StationaryValues sv = stationary_values(inv);
  const Complex lo = sv.roots[0], mid = sv.roots[1], hi = sv.roots[2];

  LatticeData lattice;
  lattice.stationary_values = sv.roots;
  // Horizontal rays from the extreme roots avoid the other two roots.
  lattice.omega1 = carlson_rf(0.0, hi - mid, hi - lo);
  lattice.omega3 = kI * carlson_rf(0.0, mid - lo, hi - lo);
  const double orientation = (lattice.omega3 / lattice.omega1).imag();
  if (orientation == 0.0 || !std::isfinite(orientation)) {
    throw Error(ErrorCode::kInternalConsistency, "half_periods: collinear periods");
  }
  if (orientation < 0.0) lattice.omega3 = -lattice.omega3;
  return lattice;
}

Weierstrass::Weierstrass(const WeierstrassInvariants& inv) : inv_(inv) {
  require_finite(inv.g2, "g2");
  require_finite(inv.g3, "g3");
  coefficients_ = laurent_coefficients(inv_, kLaurentTerms + 1);

  if (inv_.is_nondegenerate()) {
    lattice_ = half_periods(inv_);
    Complex b1 = 2.0 * lattice_->omega1, b2 = 2.0 * lattice_->omega3;
    for (int it = 0; it < 100; ++it) {
      if (std::norm(b1) > std::norm(b2)) std::swap(b1, b2);
      const double mu = std::round((std::conj(b1) * b2).real() / std::norm(b1));
      if (mu == 0.0) break;
      b2 -= mu * b1;
    }
    basis_ = {b1, b2};
    series_radius_ = 0.25 * std::abs(b1);
  } else {
    // Estimate the convergence radius from the coefficient growth.
    double radius = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < coefficients_.size(); ++i) {
      const double mag = std::abs(coefficients_[i]);
      if (mag == 0.0) continue;
      const double k = static_cast<double>(i) + 2.0;
      radius = std::min(radius, std::pow(mag, -1.0 / (2.0 * k)));
    }
    series_radius_ = 0.25 * radius;
  }
}

Complex Weierstrass::reduce(Complex z) const {
  if (!lattice_) return z;
  const Complex b1 = basis_[0], b2 = basis_[1];
  const double det = cross(b1, b2);
  const double x = std::round(cross(z, b2) / det);
  const double y = std::round(cross(b1, z) / det);
  Complex best = z - x * b1 - y * b2;
  for (int m = -1; m <= 1; ++m) {
    for (int n = -1; n <= 1; ++n) {
      const Complex cand = z - (x + m) * b1 - (y + n) * b2;
      if (std::abs(cand) < std::abs(best)) best = cand;
    }
  }
  return best;
}

std::pair<Complex, Complex> Weierstrass::series(Complex w) const {
  const Complex w2 = w * w;
  Complex p = 1.0 / w2;
  Complex dp = -2.0 / (w2 * w);
  Complex power = 1.0;  // w^(2k-4) for the current k
  for (std::size_t i = 0; i < coefficients_.size(); ++i) {
    const double k = static_cast<double>(i) + 2.0;
    power = (i == 0) ? Complex{1.0} : power * w2;
    const Complex term = coefficients_[i] * power * w2;  // c_k w^(2k-2)
    p += term;
    dp += (2.0 * k - 2.0) * coefficients_[i] * power * w;  // (2k-2) c_k w^(2k-3)
  }
  return {p, dp};
}

WpValues Weierstrass::evaluate(Complex z) const {
  require_finite(z, "z");
  const Complex reduced = reduce(z);
  if (std::abs(reduced) < kPoleProximity) {
    return {ExtendedComplex::infinity(), ExtendedComplex::infinity(), true};
  }
  Complex w = reduced;
  int halvings = 0;
  while (std::abs(w) > series_radius_ && halvings < kMaxHalvings) {
    w *= 0.5;
    ++halvings;
  }
  auto [p, dp] = series(w);
  for (int i = 0; i < halvings; ++i) {
    const Complex ddp = 6.0 * p * p - 0.5 * inv_.g2;
    const Complex dp2 = dp * dp;
    const Complex p_next = ddp * ddp / (4.0 * dp2) - 2.0 * p;
    const Complex dp_next = 3.0 * p * ddp / dp - ddp * ddp * ddp / (4.0 * dp2 * dp) - dp;
    p = p_next;
    dp = dp_next;
  }
  if (!is_finite(p) || !is_finite(dp)) {
    return {ExtendedComplex::infinity(), ExtendedComplex::infinity(), true};
  }
  return {p, dp, false};
}

ExtendedComplex Weierstrass::wp_second(Complex z) const {
  const ExtendedComplex p = wp(z);
  if (p.is_infinite()) return p;
  return 6.0 * p.value() * p.value() - 0.5 * inv_.g2;
}

ExtendedComplex wp(Complex z, const WeierstrassInvariants& inv) { return Weierstrass(inv).wp(z); }

ExtendedComplex wp_prime(Complex z, const WeierstrassInvariants& inv) {
  return Weierstrass(inv).wp_prime(z);
}

ExtendedComplex wp_second(Complex z, const WeierstrassInvariants& inv) {
  return Weierstrass(inv).wp_second(z);
}

}  // namespace schwarzian
