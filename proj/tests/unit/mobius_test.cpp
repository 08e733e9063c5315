#include "doctest.h"

#include "oracles.hpp"
#include "schwarzian/error.hpp"
#include "schwarzian/jet.hpp"
#include "schwarzian/mobius.hpp"
#include "schwarzian/schwarzian.hpp"
#include "schwarzian/verification.hpp"

using namespace schwarzian;

namespace {

MobiusTransform random_map(PointSampler& rng) {
  for (;;) {
    const Complex a = rng.in_square(2.0), b = rng.in_square(2.0), c = rng.in_square(2.0), d = rng.in_square(2.0);
    if (std::abs(a * d - b * c) > 0.1) return {a, b, c, d};
  }
}

ExtendedComplex random_point(PointSampler& rng, int k) {
  if (k % 7 == 0) return ExtendedComplex::infinity();
  return rng.in_square(3.0);
}

bool same(const ExtendedComplex& x, const ExtendedComplex& y, double tol = 1e-10) {
  return chordal_distance(x, y) <= tol;
}

}  // namespace

TEST_CASE("apply on the extended plane") {
  CHECK(schwarzian::apply(MobiusTransform::identity(), Complex(3.0, 4.0)) == ExtendedComplex(Complex(3.0, 4.0)));
  const MobiusTransform inv(0.0, 1.0, 1.0, 0.0);
  CHECK(schwarzian::apply(inv, ExtendedComplex::infinity()) == ExtendedComplex(0.0));
  CHECK(schwarzian::apply(inv, 0.0).is_infinite());
  const MobiusTransform m(1.0, 2.0, 3.0, 4.0);
  CHECK(std::abs(schwarzian::apply(m, ExtendedComplex::infinity()).value() - 1.0 / 3.0) < 1e-15);
  CHECK(schwarzian::apply(m, -4.0 / 3.0).is_infinite());
  CHECK(schwarzian::apply(MobiusTransform(2.0, 1.0, 0.0, 1.0), ExtendedComplex::infinity()).is_infinite());
}

TEST_CASE("construction rejects singular matrices") {
  CHECK_THROWS_AS(MobiusTransform(1.0, 2.0, 2.0, 4.0), Error);
  CHECK_THROWS_AS(MobiusTransform(0.0, 0.0, 0.0, 0.0), Error);
  CHECK_NOTHROW(MobiusTransform(1.0, 2.0, 2.0, 4.0 + 1e-6));
}

TEST_CASE("compose and inverse on named maps") {
  const MobiusTransform m(1.0, 2.0, 3.0, 4.0);
  CHECK(compose(m, MobiusTransform::identity()).approx_equal(m));
  const MobiusTransform inv(0.0, 1.0, 1.0, 0.0);
  CHECK(compose(inv, inv).is_identity());
  CHECK(compose(MobiusTransform(1.0, 1.0, 0.0, 1.0), MobiusTransform(1.0, 0.0, 1.0, 1.0))
            .approx_equal(MobiusTransform(2.0, 1.0, 1.0, 1.0)));
  CHECK(inverse(MobiusTransform::identity()).is_identity());
  CHECK(inverse(m).approx_equal(MobiusTransform(4.0, -2.0, -3.0, 1.0)));
  // a map and its negative are the same map
  CHECK(m.approx_equal(MobiusTransform(-1.0, -2.0, -3.0, -4.0)));
  CHECK_FALSE(m.approx_equal(MobiusTransform(1.0, 2.0, 3.0, 5.0)));
}

TEST_CASE("group laws at random points") {
  PointSampler rng(101);
  for (int trial = 0; trial < 20; ++trial) {
    const MobiusTransform f = random_map(rng), g = random_map(rng), h = random_map(rng);
    const MobiusTransform fg_h = compose(compose(f, g), h), f_gh = compose(f, compose(g, h));
    CHECK(fg_h.approx_equal(f_gh));
    for (int k = 0; k < 20; ++k) {
      const ExtendedComplex z = random_point(rng, k);
      CHECK(same(schwarzian::apply(fg_h, z), schwarzian::apply(f_gh, z)));
      CHECK(same(schwarzian::apply(compose(f, g), z), schwarzian::apply(f, schwarzian::apply(g, z))));
      CHECK(same(schwarzian::apply(inverse(f), schwarzian::apply(f, z)), z));
      CHECK(same(schwarzian::apply(compose(f, MobiusTransform::identity()), z), schwarzian::apply(f, z)));
    }
    CHECK(compose(f, inverse(f)).is_identity());
  }
}

TEST_CASE("three-point construction") {
  const std::array<Complex, 3> z{0.0, 1.0, Complex(0.0, 2.0)};
  const std::array<Complex, 3> w{4.0, -3.0, Complex(1.0, 1.0)};
  const MobiusTransform m = MobiusTransform::from_points(z, w);
  for (int k = 0; k < 3; ++k) CHECK(std::abs(schwarzian::apply(m, z[k]).value() - w[k]) < 1e-12);
  CHECK_THROWS_AS(MobiusTransform::from_points({0.0, 0.0, 1.0}, w), Error);
}

TEST_CASE("jet of a map has vanishing Schwarzian") {
  PointSampler rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const MobiusTransform m = random_map(rng);
    const Complex z = rng.in_square(2.0);
    if (std::abs(m.c() * z + m.d()) < 0.1) continue;
    const JetValue j = m.jet(z);
    CHECK(std::abs(j.f - schwarzian::apply(m, z).value()) < 1e-12 * std::max(1.0, std::abs(j.f)));
    CHECK(std::abs(schwarzian_of_jet(j)) < 1e-12 * std::max(1.0, std::abs(j.f3 / j.f1)));
    const Complex d = oracle::derivative([&](Complex x) { return schwarzian::apply(m, x).value(); }, z, 1e-4);
    CHECK(oracle::rel(j.f1, d) < 1e-7 * std::max(1.0, std::abs(d)));
  }
}
