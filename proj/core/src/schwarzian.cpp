#include "schwarzian/schwarzian.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <numbers>
#include <vector>

#include "schwarzian/error.hpp"

namespace schwarzian {
namespace {
constexpr double kJetEpsilon = 1e-10;
}  // namespace

Complex schwarzian_of_jet(const JetValue& jet) {
  if (std::abs(jet.f1) <= kJetEpsilon * unit_scale(jet.f)) {
    throw Error(ErrorCode::kCriticalPoint, "Schwarzian undefined: f' vanishes");
  }
  const Complex ratio = jet.f2 / jet.f1;
  return jet.f3 / jet.f1 - 1.5 * ratio * ratio;
}

JetValue cauchy_ring_jet(const AnalyticFunction& f, Complex z0, double radius, int samples) {
  if (samples < 16 || !std::has_single_bit(static_cast<unsigned>(samples))) {
    throw Error(ErrorCode::kInvalidArgument, "cauchy ring: samples must be a power of two >= 16");
  }
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw Error(ErrorCode::kInvalidArgument, "cauchy ring: radius must be positive");
  }
  std::array<Complex, 4> moments{};
  const double step = 2.0 * std::numbers::pi / samples;
  for (int j = 0; j < samples; ++j) {
    const Complex e = std::polar(1.0, step * j);
    const Complex value = f(z0 + radius * e);
    if (!is_finite(value)) {
      throw Error(ErrorCode::kSingularityInDisk, "cauchy ring: non-finite sample");
    }
    Complex twiddle = 1.0;
    const Complex back = std::conj(e);
    for (auto& m : moments) {
      m += value * twiddle;
      twiddle *= back;
    }
  }
  JetValue jet;
  const double n = samples;
  jet.f = moments[0] / n;
  jet.f1 = moments[1] / (n * radius);
  jet.f2 = 2.0 * moments[2] / (n * radius * radius);
  jet.f3 = 6.0 * moments[3] / (n * radius * radius * radius);
  return jet;
}

Complex schwarzian_numeric(const AnalyticFunction& f, Complex z0, double radius, int samples) {
  return schwarzian_of_jet(cauchy_ring_jet(f, z0, radius, samples));
}

JetValue compose_jet(const MobiusTransform& m, const JetValue& inner) {
  return chain(m.jet(inner.f), inner);
}

}  // namespace schwarzian
