#include "doctest.h"

#include "oracles.hpp"
#include "schwarzian/equations.hpp"
#include "schwarzian/error.hpp"
#include "schwarzian/verification.hpp"

using namespace schwarzian;

namespace {

const PolynomialC kQuartic{1.0, 4.0, 14.0, 20.0, 25.0};

SchwarzianEquation pole_zero_equation() {
  // 3(25u^4 + 20u^3 + 14u^2 + 4u + 1) / (2u(u-1)(u+1)(3u+1))
  const PolynomialC den = PolynomialC{0.0, 2.0} * PolynomialC{-1.0, 1.0} * PolynomialC{1.0, 1.0} * PolynomialC{1.0, 3.0};
  return {1, RationalFunctionC(3.0 * kQuartic, den)};
}

bool has(const std::vector<Complex>& v, Complex z, double tol = 1e-9) {
  for (const Complex x : v)
    if (std::abs(x - z) < tol) return true;
  return false;
}

}  // namespace

TEST_CASE("rational functions cancel common factors") {
  const RationalFunctionC r(PolynomialC{-1.0, 0.0, 1.0}, PolynomialC{-1.0, 1.0});
  CHECK(r.denominator().degree() == 0);
  CHECK(r.numerator().degree() == 1);
  CHECK_THROWS_AS(RationalFunctionC(PolynomialC{1.0}, PolynomialC()), Error);
}

TEST_CASE("eval_R on the extended plane") {
  const RationalFunctionC r(PolynomialC{2.0, 0.0, 1.0}, PolynomialC{-1.0, 0.0, 1.0});
  CHECK(std::abs(eval_R(r, 0.0).value() + 2.0) < 1e-15);
  CHECK(eval_R(r, 1.0).is_infinite());
  CHECK(std::abs(eval_R(r, ExtendedComplex::infinity()).value() - 1.0) < 1e-15);
  const RationalFunctionC lin(PolynomialC{1.0, 1.0}, PolynomialC{1.0});
  CHECK(eval_R(lin, ExtendedComplex::infinity()).is_infinite());
  const RationalFunctionC dec(PolynomialC{1.0}, PolynomialC{0.0, 1.0});
  CHECK(std::abs(eval_R(dec, ExtendedComplex::infinity()).value()) == 0.0);

  // agrees with naive P/Q before cancellation
  const PolynomialC P = PolynomialC{1.0, 2.0, 3.0} * PolynomialC{Complex(0, 1), 1.0};
  const PolynomialC Q = PolynomialC{4.0, 0.0, 1.0} * PolynomialC{Complex(0, 1), 1.0};
  const RationalFunctionC rq(P, Q);
  PointSampler rng(4);
  for (int k = 0; k < 50; ++k) {
    const Complex w = rng.in_square(3.0);
    const Complex naive = P(w) / Q(w);
    CHECK(oracle::rel(eval_R(rq, w).value(), naive) < 1e-10 * std::max(1.0, std::abs(naive)));
  }
}

TEST_CASE("classify the six shapes") {
  auto cl = classify({1, RationalFunctionC::constant(5.0)});
  REQUIRE(std::holds_alternative<CanonicalForm>(cl));
  CHECK(std::get<CanonicalForm>(cl).kind == CanonicalKind::kVI);
  CHECK(std::abs(std::get<CanonicalForm>(cl).c - 5.0) < 1e-15);

  cl = classify({1, RationalFunctionC(PolynomialC{1.0, 0.0, 0.5}, PolynomialC{-1.0, 0.0, 1.0})});
  REQUIRE(std::holds_alternative<CanonicalForm>(cl));
  const auto& v = std::get<CanonicalForm>(cl);
  CHECK(v.kind == CanonicalKind::kV);
  CHECK(std::abs(v.c - 0.5) < 1e-14);
  CHECK(has(v.sigma, Complex(0, std::sqrt(2.0))));
  CHECK(has(v.sigma, Complex(0, -std::sqrt(2.0))));
  CHECK(std::abs(v.tau[0] + 1.0) < 1e-12);
  CHECK(std::abs(v.tau[1] - 1.0) < 1e-12);

  cl = classify(pole_zero_equation());
  REQUIRE(std::holds_alternative<CanonicalForm>(cl));
  const auto& k1 = std::get<CanonicalForm>(cl);
  CHECK(k1.kind == CanonicalKind::kI);
  CHECK(std::abs(k1.c - 12.5) < 1e-12);
  REQUIRE(k1.tau.size() == 4);
  const std::array<Complex, 4> sorted{-1.0, -1.0 / 3.0, 0.0, 1.0};
  for (int k = 0; k < 4; ++k) CHECK(std::abs(k1.tau[k] - sorted[k]) < 1e-12);

  const CanonicalForm ii{CanonicalKind::kII, 3, 7.0, {Complex(0, 1), 2.0}, {4.0, -3.0, 0.0}};
  cl = classify(ii.to_equation());
  REQUIRE(std::holds_alternative<CanonicalForm>(cl));
  const auto& f2 = std::get<CanonicalForm>(cl);
  CHECK(f2.kind == CanonicalKind::kII);
  CHECK(std::abs(f2.tau[0] - 4.0) < 1e-9);
  CHECK(std::abs(f2.tau[1] + 3.0) < 1e-9);
  CHECK(std::abs(f2.tau[2]) < 1e-9);
  CHECK(std::abs(f2.c - 7.0) < 1e-9);

  const CanonicalForm iii{CanonicalKind::kIII, 3, 2.0, {0.5, -0.5}, {-1.0, 0.0, 1.0}};
  cl = classify(iii.to_equation());
  REQUIRE(std::holds_alternative<CanonicalForm>(cl));
  CHECK(std::get<CanonicalForm>(cl).kind == CanonicalKind::kIII);

  const CanonicalForm iv{CanonicalKind::kIV, 2, 2.0, {0.5, -0.5}, {0.0, 1.0, -1.0}};
  cl = classify(iv.to_equation());
  REQUIRE(std::holds_alternative<CanonicalForm>(cl));
  CHECK(std::get<CanonicalForm>(cl).kind == CanonicalKind::kIV);
  CHECK(std::abs(std::get<CanonicalForm>(cl).tau[0]) < 1e-9);
}

TEST_CASE("non-canonical signatures") {
  auto cl = classify({1, RationalFunctionC(PolynomialC{1.0, 1.0}, PolynomialC{1.0})});
  REQUIRE(std::holds_alternative<NotCanonical>(cl));
  CHECK_FALSE(std::get<NotCanonical>(cl).reason.empty());

  // right shape for kind V but p = 2
  cl = classify({2, RationalFunctionC(PolynomialC{2.0, 0.0, 1.0}, PolynomialC{-1.0, 0.0, 1.0})});
  CHECK(std::holds_alternative<NotCanonical>(cl));

  // kind III numerator pattern with the wrong denominator pattern
  const PolynomialC num = pow(PolynomialC{1.0, 0.0, 1.0}, 3);
  const PolynomialC den = pow(PolynomialC{0.0, 1.0}, 3) * pow(PolynomialC{-1.0, 1.0}, 3);
  cl = classify({3, RationalFunctionC(num, den)});
  REQUIRE(std::holds_alternative<NotCanonical>(cl));
  CHECK(std::get<NotCanonical>(cl).denominator_multiplicities == std::vector<int>{3, 3});
}

TEST_CASE("classify after identity transform is unchanged") {
  const std::vector<CanonicalForm> forms = {
      {CanonicalKind::kI, 1, 3.0, {1.0, 2.0, Complex(0, 1), -2.0}, {-1.0, 0.0, 0.5, 3.0}},
      {CanonicalKind::kII, 3, 7.0, {Complex(0, 1), 2.0}, {4.0, -3.0, 0.0}},
      {CanonicalKind::kIII, 3, 2.0, {0.5, -0.5}, {-1.0, 0.0, 1.0}},
      {CanonicalKind::kIV, 2, 2.0, {0.5, -0.5}, {0.0, 1.0, -1.0}},
      {CanonicalKind::kV, 1, 0.5, {Complex(0, 1), Complex(0, -1)}, {-1.0, 1.0}},
      {CanonicalKind::kVI, 2, 0.25, {}, {}},
  };
  for (const auto& f : forms) {
    const auto cl = classify(transform_equation(f.to_equation(), MobiusTransform::identity()));
    REQUIRE(std::holds_alternative<CanonicalForm>(cl));
    const auto& g = std::get<CanonicalForm>(cl);
    CHECK(g.kind == f.kind);
    CHECK(std::abs(g.c - f.c) < 1e-9 * std::abs(f.c));
    REQUIRE(g.tau.size() == f.tau.size());
    for (const Complex t : f.tau) CHECK(has(g.tau, t, 1e-8));
    for (const Complex s : f.sigma) CHECK(has(g.sigma, s, 1e-6));
  }
}

TEST_CASE("transform_equation") {
  // v = -u maps kind V with tau (1,-1) to tau (-1,1), sigma negated
  const CanonicalForm v{CanonicalKind::kV, 1, 0.5, {Complex(1, 1), 2.0}, {-1.0, 1.0}};
  const auto cl = classify(transform_equation(v.to_equation(), MobiusTransform(-1.0, 0.0, 0.0, 1.0)));
  REQUIRE(std::holds_alternative<CanonicalForm>(cl));
  const auto& w = std::get<CanonicalForm>(cl);
  CHECK(w.kind == CanonicalKind::kV);
  CHECK(has(w.sigma, Complex(-1, -1)));
  CHECK(has(w.sigma, -2.0));

  // kind VI is fixed by every map
  const SchwarzianEquation six{2, RationalFunctionC::constant(0.25)};
  const auto t = transform_equation(six, MobiusTransform(1.0, 2.0, 3.0, 4.0));
  CHECK(t.p == 2);
  CHECK(t.R.is_constant());
  CHECK(std::abs(t.R.numerator()[0] / t.R.denominator()[0] - 0.25) < 1e-15);

  // R' = R ∘ m pointwise
  const SchwarzianEquation eq = pole_zero_equation();
  const MobiusTransform m(Complex(1, 1), 2.0, 0.5, Complex(3, -1));
  const auto te = transform_equation(eq, m);
  PointSampler rng(8);
  for (int k = 0; k < 30; ++k) {
    const Complex w = rng.in_square(2.0);
    const ExtendedComplex mw = schwarzian::apply(m, w);
    if (mw.is_infinite()) continue;
    const ExtendedComplex a = eval_R(eq.R, mw), b = eval_R(te.R, w);
    if (a.is_infinite() || b.is_infinite()) continue;
    CHECK(oracle::rel(b.value(), a.value()) < 1e-9 * std::max(1.0, std::abs(a.value())));
  }

  // kind V with tau moved off to infinity stops being canonical
  const CanonicalForm v2{CanonicalKind::kV, 1, 0.5, {Complex(0, 1), Complex(0, -1)}, {-1.0, 1.0}};
  const auto gone = classify(transform_equation(v2.to_equation(), MobiusTransform(1.0, 0.0, 1.0, -1.0)));
  CHECK(std::holds_alternative<NotCanonical>(gone));
}

TEST_CASE("elementary symmetric functions") {
  auto e = elementary_symmetric({0.0, 1.0, -1.0, -1.0 / 3.0});
  CHECK(std::abs(e.e1 + 1.0 / 3.0) < 1e-15);
  CHECK(std::abs(e.e2 + 1.0) < 1e-15);
  CHECK(std::abs(e.e3 - 1.0 / 3.0) < 1e-15);
  CHECK(std::abs(e.e4) < 1e-15);
  e = elementary_symmetric({0.0, 0.0, 0.0, 0.0});
  CHECK(std::abs(e.e1) + std::abs(e.e2) + std::abs(e.e3) + std::abs(e.e4) == 0.0);
  e = elementary_symmetric({1.0, 1.0, 1.0, 1.0});
  CHECK(e.e1 == 4.0);
  CHECK(e.e2 == 6.0);
  CHECK(e.e3 == 4.0);
  CHECK(e.e4 == 1.0);

  PointSampler rng(50);
  for (int k = 0; k < 50; ++k) {
    const std::array<Complex, 4> t{rng.in_square(2.0), rng.in_square(2.0), rng.in_square(2.0), rng.in_square(2.0)};
    const auto s = elementary_symmetric(t);
    const PolynomialC p = PolynomialC::from_roots(t);
    CHECK(std::abs(p[3] + s.e1) < 1e-12);
    CHECK(std::abs(p[2] - s.e2) < 1e-12);
    CHECK(std::abs(p[1] + s.e3) < 1e-12);
    CHECK(std::abs(p[0] - s.e4) < 1e-12);
  }
}

TEST_CASE("q_factor") {
  CHECK(std::abs(q_factor({0.0, 1.0, -1.0, -1.0 / 3.0}, 1) + 1.0 / 3.0) < 1e-15);
  CHECK(q_factor({0.0, 1.0, 2.0, 3.0}, 4) == 6.0);
  CHECK(q_factor({0.0, 1.0, 2.0, 3.0}, 1) == -6.0);
  CHECK_THROWS_AS(q_factor({0.0, 1.0, 1.0, 3.0}, 1), Error);
  CHECK_THROWS_AS(q_factor({0.0, 1.0, 2.0, 3.0}, 5), Error);
}

TEST_CASE("kind parsing round-trips") {
  for (const auto k : {CanonicalKind::kI, CanonicalKind::kII, CanonicalKind::kIII, CanonicalKind::kIV,
                       CanonicalKind::kV, CanonicalKind::kVI}) {
    CHECK(parse_kind(to_string(k)) == k);
  }
  CHECK_FALSE(parse_kind("VII").has_value());
}
