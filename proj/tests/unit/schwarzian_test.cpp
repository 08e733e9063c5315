#include "doctest.h"

#include <cmath>

#include "oracles.hpp"
#include "schwarzian/error.hpp"
#include "schwarzian/schwarzian.hpp"
#include "schwarzian/solution.hpp"
#include "schwarzian/solver.hpp"
#include "schwarzian/verification.hpp"

using namespace schwarzian;

namespace {

MobiusTransform random_map(PointSampler& rng) {
  for (;;) {
    const Complex a = rng.in_square(2.0), b = rng.in_square(2.0), c = rng.in_square(2.0), d = rng.in_square(2.0);
    if (std::abs(a * d - b * c) > 0.1) return {a, b, c, d};
  }
}

std::vector<Solution> families() {
  std::vector<Solution> out;
  out.push_back(generate_type1({-1.0, -1.0 / 3.0, 0.0, 1.0}, 3, -1.0).solution);
  const Complex r5(0.0, std::sqrt(5.0));
  out.push_back(std::get<WpRationalSolution>(solve_type2(10584.0, {r5, -r5})));
  const Complex i3(0.0, 1.0 / std::sqrt(3.0));
  out.push_back(std::get<WpRationalSolution>(solve_type3(-64.0 / 27.0, {i3, -i3})));
  out.push_back(std::get<WpRationalSolution>(solve_type4(9.0 / 4.0, {Complex(0, 0.5), Complex(0, -0.5)})));
  out.push_back(TrigSolution{1.0, 0.0});
  out.push_back(ExpSolution{1.0});
  return out;
}

}  // namespace

TEST_CASE("closed-form Schwarzians of elementary jets") {
  const Complex z(0.3, -0.2);
  const Complex e = std::exp(z);
  CHECK(std::abs(schwarzian_of_jet({e, e, e, e}) + 0.5) < 1e-14);
  const Complex s = std::sin(z), c = std::cos(z), t = std::tan(z);
  CHECK(std::abs(schwarzian_of_jet({s, c, -s, -c}) - (-1.0 - 1.5 * t * t)) < 1e-13);
  CHECK_THROWS_AS(schwarzian_of_jet({1.0, 0.0, 1.0, 1.0}), Error);
  CHECK_THROWS_AS(schwarzian_of_jet({1e6, 1e-5, 1.0, 1.0}), Error);
}

TEST_CASE("jet arithmetic against finite differences") {
  const auto f = [](Complex z) { return (z * z + 1.0) / (z - 3.0) * std::exp(z); };
  const Complex z0(0.4, 0.1);
  const JetValue x{z0, 1.0, 0.0, 0.0};
  const JetValue ex{std::exp(z0), std::exp(z0), std::exp(z0), std::exp(z0)};
  const JetValue j = (x * x + 1.0) / (x - 3.0) * ex;
  const JetValue ring = cauchy_ring_jet(f, z0, 0.3, 64);
  CHECK(oracle::rel(j.f, f(z0)) < 1e-14);
  CHECK(oracle::rel(j.f1, ring.f1) < 1e-11);
  CHECK(oracle::rel(j.f2, ring.f2) < 1e-10);
  CHECK(oracle::rel(j.f3, ring.f3) < 1e-9);
}

TEST_CASE("numeric Schwarzian") {
  const auto ex = [](Complex z) { return std::exp(z); };
  CHECK(std::abs(schwarzian_numeric(ex, 0.3, 0.5, 64) + 0.5) < 1e-10);
  const auto fp = [](Complex z) { return -3.0 / (2.0 * (z + 1.0) * (z + 1.0)); };
  CHECK(std::abs(schwarzian_numeric(fp, 0.5) + 2.0 / 3.0) < 1e-8);
  const MobiusTransform m(Complex(1, 2), 3.0, Complex(0, 1), 4.0);
  CHECK(std::abs(schwarzian_numeric([&](Complex z) { return schwarzian::apply(m, z).value(); }, 0.2)) < 1e-8);
  CHECK_THROWS_AS(cauchy_ring_jet(ex, 0.0, 0.1, 48), Error);
  CHECK_THROWS_AS(cauchy_ring_jet([](Complex z) { return 1.0 / (z - 0.25); }, 0.0, 0.25, 64), Error);
}

TEST_CASE("Schwarzian annihilates random maps") {
  PointSampler rng(3);
  int tested = 0;
  for (int trial = 0; trial < 200 && tested < 20; ++trial) {
    const MobiusTransform m = random_map(rng);
    const Complex z = rng.in_square(2.0);
    const Complex pole = m.c() == 0.0 ? Complex(1e9) : -m.d() / m.c();
    if (std::abs(z - pole) < 0.5) continue;
    const auto f = [&](Complex x) { return schwarzian::apply(m, x).value(); };
    CHECK(std::abs(schwarzian_numeric(f, z, 0.2)) < 1e-8);
    ++tested;
  }
  CHECK(tested == 20);
}

TEST_CASE("cocycle under inner composition with a map") {
  PointSampler rng(9);
  const auto f = [](Complex z) { return std::sin(z) + 0.3 * z * z; };
  int tested = 0;
  for (int trial = 0; trial < 400 && tested < 20; ++trial) {
    const MobiusTransform g = random_map(rng);
    const Complex z = rng.in_square(1.0);
    if (std::abs(g.c() * z + g.d()) < 0.5) continue;
    const JetValue gj = g.jet(z);
    if (std::abs(gj.f) > 2.0) continue;
    const JetValue fj = cauchy_ring_jet(f, gj.f, 0.2, 64);
    if (std::abs(fj.f1) < 0.1) continue;
    const Complex lhs = schwarzian_numeric([&](Complex x) { return f(schwarzian::apply(g, x).value()); }, z, 0.05);
    const Complex rhs = schwarzian_of_jet(fj) * gj.f1 * gj.f1;
    CHECK(oracle::rel(lhs, rhs) < 1e-8 * std::max(1.0, std::abs(rhs)));
    ++tested;
  }
  CHECK(tested == 20);
}

TEST_CASE("scaling law S(u(λz)) = λ² S(u)(λz)") {
  const auto u = [](Complex z) { return std::exp(z) / (1.0 + z * z / 4.0); };
  for (const Complex lambda : {Complex(2.0), Complex(0.0, 1.0)}) {
    for (const Complex z : {Complex(0.1, 0.2), Complex(-0.3, 0.05)}) {
      const Complex lhs = schwarzian_numeric([&](Complex x) { return u(lambda * x); }, z, 0.1);
      const Complex rhs = lambda * lambda * schwarzian_numeric(u, lambda * z, 0.2);
      CHECK(oracle::rel(lhs, rhs) < 1e-8);
    }
  }
}

TEST_CASE("fixed point S(f) = f for -3/(2(z+a)^2)") {
  for (const Complex a : {Complex(0.0), Complex(1.0, 1.0)}) {
    PointSampler rng(13);
    int tested = 0;
    while (tested < 20) {
      const Complex z = rng.in_square(2.0);
      if (std::abs(z + a) < 0.5) continue;
      const auto f = [&](Complex x) { return -3.0 / (2.0 * (x + a) * (x + a)); };
      const double r = std::min(0.3, 0.5 * std::abs(z + a));
      CHECK(oracle::rel(schwarzian_numeric(f, z, r), f(z)) < 1e-8);
      ++tested;
    }
  }
}

TEST_CASE("exact solution jets agree with the Cauchy ring") {
  for (const Solution& s : families()) {
    const SolutionEvaluator eval(s);
    SamplingOptions opt;
    opt.samples = 20;
    opt.exclusion = 0.15;
    for (const Complex z : generic_points(eval, opt)) {
      const JetValue exact = eval.jet(z);
      const double r = 0.05;
      const auto f = [&](Complex x) {
        const ExtendedComplex v = eval.value(x);
        return v.is_finite() ? v.value() : Complex(std::nan(""), 0.0);
      };
      Complex numeric;
      try {
        numeric = schwarzian_numeric(f, z, r, 128);
      } catch (const Error&) {
        continue;
      }
      const Complex closed = schwarzian_of_jet(exact);
      CHECK_MESSAGE(oracle::rel(numeric, closed) < 1e-8 * std::max(1.0, std::abs(closed)), family_name(s),
                    " at ", z.real(), ",", z.imag());
    }
  }
}

TEST_CASE("Mobius invariance of solution Schwarzians") {
  PointSampler rng(21);
  for (const Solution& s : families()) {
    const SolutionEvaluator base(s);
    SamplingOptions opt;
    opt.samples = 20;
    const auto pts = generic_points(base, opt);
    for (int k = 0; k < 5; ++k) {
      const MobiusTransform g = random_map(rng);
      const SolutionEvaluator moved(compose(g, s));
      for (const Complex z : pts) {
        const EvaluatedJet e = moved.evaluate(z);
        if (e.is_pole || std::abs(e.jet.f1) < 1e-3 || std::abs(e.jet.f) > 1e4) continue;
        const Complex a = schwarzian_of_jet(base.jet(z));
        CHECK(oracle::rel(schwarzian_of_jet(e.jet), a) < 1e-8 * std::max(1.0, std::abs(a)));
      }
    }
  }
}

TEST_CASE("compose_jet matches jet of the composed map") {
  const MobiusTransform m(1.0, Complex(0, 2), 0.5, 3.0);
  const JetValue inner{Complex(0.2, 0.1), 1.5, -0.3, 2.0};
  const JetValue viaChain = chain(m.jet(inner.f), inner);
  const JetValue direct = compose_jet(m, inner);
  CHECK(oracle::rel(viaChain.f3, direct.f3) < 1e-13);
  CHECK(std::abs(schwarzian_of_jet(direct) - schwarzian_of_jet(inner)) < 1e-12);
}
