#include "schwarzian/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "schwarzian/error.hpp"

namespace schwarzian {

PolynomialC::PolynomialC(std::vector<Complex> coefficients) : coeffs_(std::move(coefficients)) {
  for (const Complex c : coeffs_) {
    if (!is_finite(c)) throw Error(ErrorCode::kInvalidArgument, "polynomial coefficient not finite");
  }
  trim();
}

void PolynomialC::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0.0) coeffs_.pop_back();
}

PolynomialC PolynomialC::from_roots(std::span<const Complex> roots, Complex lead) {
  std::vector<Complex> c{lead};
  for (const Complex r : roots) {
    c.push_back(0.0);
    for (std::size_t k = c.size() - 1; k > 0; --k) c[k] = c[k - 1] - r * c[k];
    c[0] = -r * c[0];
  }
  return PolynomialC(std::move(c));
}

Complex PolynomialC::operator()(Complex u) const {
  Complex acc{};
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * u + *it;
  return acc;
}

PolynomialC PolynomialC::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Complex> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = static_cast<double>(k) * coeffs_[k];
  return PolynomialC(std::move(d));
}

PolynomialC PolynomialC::monic() const {
  if (is_zero()) throw Error(ErrorCode::kInvalidArgument, "monic: zero polynomial");
  return (1.0 / leading()) * *this;
}

double PolynomialC::max_abs_coefficient() const {
  double m = 0.0;
  for (const Complex c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

PolynomialC operator+(const PolynomialC& a, const PolynomialC& b) {
  std::vector<Complex> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = a[k] + b[k];
  return PolynomialC(std::move(c));
}

PolynomialC operator-(const PolynomialC& a, const PolynomialC& b) { return a + (-1.0) * b; }

PolynomialC operator*(const PolynomialC& a, const PolynomialC& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Complex> c(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return PolynomialC(std::move(c));
}

PolynomialC operator*(Complex s, const PolynomialC& a) {
  std::vector<Complex> c = a.coeffs_;
  for (auto& v : c) v *= s;
  return PolynomialC(std::move(c));
}

PolynomialC pow(const PolynomialC& p, int n) {
  PolynomialC out = PolynomialC::constant(1.0);
  for (int i = 0; i < n; ++i) out = out * p;
  return out;
}

double relative_coefficient_distance(const PolynomialC& a, const PolynomialC& b) {
  const double scale = std::max(a.max_abs_coefficient(), b.max_abs_coefficient());
  if (scale == 0.0) return 0.0;
  double diff = 0.0;
  const std::size_t n = std::max(a.coefficients().size(), b.coefficients().size());
  for (std::size_t k = 0; k < n; ++k) diff = std::max(diff, std::abs(a[k] - b[k]));
  return diff / scale;
}

std::vector<Complex> roots(const PolynomialC& p) {
  const int n = p.degree();
  if (n <= 0) return {};
  const PolynomialC q = p.monic();
  if (n == 1) return {-q[0]};
  const PolynomialC dq = q.derivative();

  // Fujiwara-style bound for the initial circle.
  double radius = 0.0;
  for (int k = 0; k < n; ++k) {
    radius = std::max(radius, std::pow(std::abs(q[static_cast<std::size_t>(k)]), 1.0 / (n - k)));
  }
  radius = std::max(radius, 1e-3);

  std::vector<Complex> z(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    z[static_cast<std::size_t>(k)] = std::polar(radius, 2.0 * std::numbers::pi * k / n + 0.4);
  }

  for (int it = 0; it < 1000; ++it) {
    double largest_step = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) {
      const Complex value = q(z[i]);
      if (value == 0.0) continue;
      const Complex ratio = value / dq(z[i]);
      Complex repulsion{};
      for (std::size_t j = 0; j < z.size(); ++j) {
        if (j != i && z[i] != z[j]) repulsion += 1.0 / (z[i] - z[j]);
      }
      Complex step = ratio / (1.0 - ratio * repulsion);
      if (!is_finite(step)) step = ratio;
      if (!is_finite(step)) continue;
      z[i] -= step;
      largest_step = std::max(largest_step, std::abs(step) / unit_scale(z[i]));
    }
    if (largest_step < 1e-16) break;
  }

  // Newton polish, kept only where it reduces the residual.
  for (auto& r : z) {
    Complex x = r;
    for (int it = 0; it < 3; ++it) {
      const Complex d = dq(x);
      if (d == 0.0) break;
      const Complex next = x - q(x) / d;
      if (!is_finite(next) || std::abs(q(next)) >= std::abs(q(x))) break;
      x = next;
    }
    r = x;
  }
  return z;
}

namespace {

std::vector<RootCluster> cluster_at(const std::vector<Complex>& rts, double threshold) {
  const std::size_t n = rts.size();
  std::vector<std::size_t> parent(n);
  for (std::size_t i = 0; i < n; ++i) parent[i] = i;
  const auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double scale = std::max({1.0, std::abs(rts[i]), std::abs(rts[j])});
      if (std::abs(rts[i] - rts[j]) < threshold * scale) parent[find(i)] = find(j);
    }
  }
  std::vector<RootCluster> clusters;
  std::vector<std::size_t> owner;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t root = find(i);
    const auto pos = std::find(owner.begin(), owner.end(), root);
    if (pos == owner.end()) {
      owner.push_back(root);
      clusters.push_back({rts[i], 1});
    } else {
      auto& c = clusters[static_cast<std::size_t>(pos - owner.begin())];
      c.value += rts[i];
      ++c.multiplicity;
    }
  }
  for (auto& c : clusters) c.value /= static_cast<double>(c.multiplicity);
  std::sort(clusters.begin(), clusters.end(),
            [](const RootCluster& a, const RootCluster& b) { return lex_less(a.value, b.value); });
  return clusters;
}

// An m-fold root of p is a simple root of p^(m-1); Newton there recovers
// the centre far more accurately than the mean of the scattered roots.
void refine_centres(std::vector<RootCluster>& clusters, const PolynomialC& p) {
  for (auto& c : clusters) {
    if (c.multiplicity < 2) continue;
    PolynomialC d = p;
    for (int k = 1; k < c.multiplicity; ++k) d = d.derivative();
    const PolynomialC dd = d.derivative();
    Complex x = c.value;
    for (int it = 0; it < 8; ++it) {
      const Complex slope = dd(x);
      if (slope == 0.0) break;
      const Complex next = x - d(x) / slope;
      if (!is_finite(next) || std::abs(d(next)) >= std::abs(d(x))) break;
      x = next;
    }
    c.value = x;
  }
}

PolynomialC rebuild(const std::vector<RootCluster>& clusters, Complex lead) {
  std::vector<Complex> expanded;
  for (const auto& c : clusters) expanded.insert(expanded.end(), static_cast<std::size_t>(c.multiplicity), c.value);
  return PolynomialC::from_roots(expanded, lead);
}

}  // namespace

std::vector<RootCluster> clustered_roots(const PolynomialC& p) {
  const std::vector<Complex> rts = roots(p);
  if (rts.empty()) return {};
  constexpr double kMergeThresholds[] = {1e-3, 3e-4, 1e-4, 3e-5, 1e-5, 3e-6, 1e-6, 3e-7};
  constexpr double kAlwaysMerge = 1e-7;
  constexpr double kAmbiguous = 1e-5;

  std::vector<RootCluster> chosen = cluster_at(rts, kAlwaysMerge);
  refine_centres(chosen, p);
  for (const double t : kMergeThresholds) {
    auto candidate = cluster_at(rts, t);
    if (candidate.size() == chosen.size()) break;
    refine_centres(candidate, p);
    if (relative_coefficient_distance(rebuild(candidate, p.leading()), p) <= 1e-9) {
      chosen = std::move(candidate);
      break;
    }
  }
  // Real parts equal up to roundoff compare by imaginary part, so conjugate
  // pairs come out in the same order on every platform.
  std::sort(chosen.begin(), chosen.end(), [](const RootCluster& a, const RootCluster& b) {
    const double scale = std::max({1.0, std::abs(a.value), std::abs(b.value)});
    if (std::abs(a.value.real() - b.value.real()) > 1e-9 * scale) return a.value.real() < b.value.real();
    return a.value.imag() < b.value.imag();
  });
  for (std::size_t i = 0; i < chosen.size(); ++i) {
    for (std::size_t j = i + 1; j < chosen.size(); ++j) {
      const double scale = std::max({1.0, std::abs(chosen[i].value), std::abs(chosen[j].value)});
      if (std::abs(chosen[i].value - chosen[j].value) < kAmbiguous * scale) {
        throw Error(ErrorCode::kAmbiguousMultiplicity,
                    "roots too close to decide whether they coincide");
      }
    }
  }
  return chosen;
}

}  // namespace schwarzian
