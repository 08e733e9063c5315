#include "doctest.h"

#include <cmath>

#include "oracles.hpp"
#include "schwarzian/error.hpp"
#include "schwarzian/schwarzian.hpp"
#include "schwarzian/solver.hpp"

using namespace schwarzian;

namespace {

const std::array<Complex, 4> kTau{-1.0, -1.0 / 3.0, 0.0, 1.0};
const PolynomialC kQuartic{1.0, 4.0, 14.0, 20.0, 25.0};
const PolynomialC kDen = PolynomialC{0.0, 2.0} * PolynomialC{-1.0, 1.0} * PolynomialC{1.0, 1.0} * PolynomialC{1.0, 3.0};

TypeICoefficients pole_zero_coefficients() {
  TypeICoefficients t;
  t.r = {0.5, 2.0, 7.0, 10.0, 12.5};
  t.tau = kTau;
  return t;
}

struct Reference {
  Complex scale;  // equation is scale · quartic / den
  int index;
  Complex a, b, d, g2;
};

// Pole values 0, 1, -1, -1/3 with the parameters of the printed solutions.
const std::vector<Reference> kReferences = {
    {3.0, 3, 0.0, -1.0, 1.0, 16.0},
    {6.0, 4, 1.0, 16.0, -12.0, 64.0},
    {-6.0, 1, -1.0, 8.0, 8.0, 64.0},
    {54.0, 2, -1.0 / 3.0, 16.0, 12.0, 5184.0},
};

bool close(Complex x, Complex y, double tol) { return std::abs(x - y) <= tol * std::max(1.0, std::abs(y)); }

}  // namespace

TEST_CASE("type I brackets and parameters for the pole-value-0 equation") {
  const auto g = generate_type1(kTau, 3, -1.0);
  const std::array<Complex, 5> expect{0.5, 2.0, 7.0, 10.0, 12.5};
  for (int k = 0; k < 5; ++k) CHECK(close(g.coefficients.r[k], expect[k], 1e-14));
  CHECK(close(g.solution.a, 0.0, 1e-15));
  CHECK(close(g.solution.d, 1.0, 1e-14));
  CHECK(close(g.solution.inv.g2, 16.0, 1e-14));
  CHECK(std::abs(g.solution.inv.g3) < 1e-13);

  const auto s = solve_type1(pole_zero_coefficients(), 3);
  REQUIRE(std::holds_alternative<EllipticFractionalSolution>(s));
  const auto& e = std::get<EllipticFractionalSolution>(s);
  CHECK(close(e.b, -1.0, 1e-12));
}

TEST_CASE("every pole value of the reference quartic is consistent") {
  const auto all = solve_type1_all(pole_zero_coefficients());
  CHECK(all.size() == 4);
}

TEST_CASE("reference equations solve to the printed parameters") {
  for (const auto& ref : kReferences) {
    const SchwarzianEquation eq{1, RationalFunctionC(ref.scale * kQuartic, kDen)};
    SolveOptions opt;
    opt.tau_index = ref.index;
    const SolveOutcome out = solve(eq, opt);
    REQUIRE(std::holds_alternative<Solution>(out.result));
    const auto& e = std::get<EllipticFractionalSolution>(std::get<Solution>(out.result));
    CHECK(close(e.a, ref.a, 1e-9));
    CHECK(close(e.b, ref.b, 1e-9));
    CHECK(close(e.d, ref.d, 1e-9));
    CHECK(close(e.inv.g2, ref.g2, 1e-9));
    CHECK(std::abs(e.inv.g3) < 1e-9 * std::abs(ref.g2));
    CHECK(out.certificate.pass);
    const ResidualReport rep = verify_solution(eq, e, {200, 1e-6, 42, 2.0, 1e-2});
    CHECK(rep.pass);
    CHECK(rep.sample_count == 200);
  }
}

TEST_CASE("generate_type1 at pole value 1 gives g2 = 64, d = -12 for b = 16") {
  const auto g = generate_type1(kTau, 4, 16.0);
  CHECK(close(g.solution.d, -12.0, 1e-13));
  CHECK(close(g.solution.inv.g2, 64.0, 1e-13));
  CHECK(std::abs(g.solution.inv.g3) < 1e-12);
}

TEST_CASE("type I homogeneity in b") {
  PointSampler rng(19);
  for (int k = 0; k < 10; ++k) {
    const std::array<Complex, 4> tau{rng.in_square(2.0), rng.in_square(2.0), rng.in_square(2.0), rng.in_square(2.0)};
    const Complex b = rng.in_square(2.0) + 0.1;
    const int i = 1 + k % 4;
    const auto g1 = generate_type1(tau, i, b), g2 = generate_type1(tau, i, 2.0 * b);
    for (int j = 0; j < 5; ++j) CHECK(close(g2.coefficients.r[j], 2.0 * g1.coefficients.r[j], 1e-12));
    CHECK(close(g2.solution.inv.g2, 4.0 * g1.solution.inv.g2, 1e-12));
    CHECK(close(g2.solution.inv.g3, 8.0 * g1.solution.inv.g3, 1e-12));
    CHECK(close(g2.solution.d, 2.0 * g1.solution.d, 1e-12));
  }
}

TEST_CASE("type I roundtrip and discriminant identity") {
  PointSampler rng(2024);
  int done = 0;
  while (done < 100) {
    std::array<Complex, 4> tau;
    for (auto& t : tau) t = rng.in_square(2.0);
    bool spread = true;
    for (int j = 0; j < 4; ++j)
      for (int k = j + 1; k < 4; ++k) spread = spread && std::abs(tau[j] - tau[k]) > 0.2;
    if (!spread) continue;
    const Complex b = std::polar(0.5 + rng.uniform(), 6.283 * rng.uniform());
    const int i = 1 + static_cast<int>(4 * rng.uniform());
    const auto g = generate_type1(tau, i, b);
    const auto s = solve_type1(g.coefficients, i);
    REQUIRE(std::holds_alternative<EllipticFractionalSolution>(s));
    const auto& e = std::get<EllipticFractionalSolution>(s);
    CHECK(close(e.a, tau[i - 1], 1e-9));
    CHECK(close(e.b, b, 1e-9));
    CHECK(close(e.d, g.solution.d, 1e-9));
    CHECK(close(e.inv.g2, g.solution.inv.g2, 1e-9));
    CHECK(close(e.inv.g3, g.solution.inv.g3, 1e-9));
    const Complex delta = e.inv.discriminant();
    CHECK(std::abs(delta - type1_discriminant(tau, i, b)) <= 1e-8 * std::abs(delta));
    ++done;
  }
}

TEST_CASE("perturbed coefficients have no solution") {
  for (int j = 0; j < 5; ++j) {
    TypeICoefficients t = pole_zero_coefficients();
    t.r[j] += 1e-3;
    const auto s = solve_type1(t);
    REQUIRE(std::holds_alternative<NoSolution>(s));
    CHECK(std::get<NoSolution>(s).diagnostics.size() == 4);
  }
}

TEST_CASE("vanishing coefficients are degenerate") {
  TypeICoefficients t;
  t.tau = kTau;
  CHECK_THROWS_AS(solve_type1(t), Error);
}

TEST_CASE("kind II") {
  const Complex r5(0.0, std::sqrt(5.0));
  auto s = solve_type2(10584.0, {r5, -r5});
  REQUIRE(std::holds_alternative<WpRationalSolution>(s));
  const auto& w = std::get<WpRationalSolution>(s);
  CHECK(std::abs(w.inv.g2) == 0.0);
  CHECK(close(w.inv.g3, 1.0, 1e-15));
  CHECK(std::holds_alternative<NoSolution>(solve_type2(10584.0, {1.0, 2.0})));

  // u = -3 where wp = 0
  const Weierstrass W(w.inv);
  const LatticeData L = *W.lattice();
  // for g2 = 0 the zeros of wp are at (2/3)(ω1 + ω3)-type points; locate one by Newton
  Complex z = 0.5 * (L.omega1 + L.omega3);
  for (int k = 0; k < 50; ++k) z -= W.wp(z).value() / W.wp_prime(z).value();
  REQUIRE(std::abs(W.wp(z).value()) < 1e-12);
  CHECK(std::abs(SolutionEvaluator(w).value(z).value() + 3.0) < 1e-9);
}

TEST_CASE("kind II subequation with multiplicities (3,4,5)") {
  const Complex r5(0.0, std::sqrt(5.0));
  const CanonicalForm form{CanonicalKind::kII, 3, 10584.0, {r5, -r5}, {4.0, -3.0, 0.0}};
  const SolveOutcome out = solve(form.to_equation());
  REQUIRE(std::holds_alternative<Solution>(out.result));
  const Solution& s = std::get<Solution>(out.result);
  const SubequationSpec spec = subequation_for(out.form, s);
  CHECK(spec.n == 6);
  REQUIRE(spec.factors.size() == 3);
  CHECK(spec.factors[0].multiplicity == 3);
  CHECK(spec.factors[1].multiplicity == 4);
  CHECK(spec.factors[2].multiplicity == 5);
  const ResidualReport rep = verify_subequation(s, spec, {50, 1e-6, 42, 2.0, 1e-2});
  CHECK(rep.pass);
}

TEST_CASE("kinds III and IV") {
  const Complex i3(0.0, 1.0 / std::sqrt(3.0));
  auto s3 = solve_type3(-64.0 / 27.0, {i3, -i3});
  REQUIRE(std::holds_alternative<WpRationalSolution>(s3));
  const auto& w3 = std::get<WpRationalSolution>(s3);
  CHECK(close(w3.L, 1.0, 1e-14));
  CHECK(close(w3.inv.g3, (-64.0 / 27.0) / 432.0, 1e-15));
  CHECK(std::holds_alternative<NoSolution>(solve_type3(-64.0 / 27.0, {Complex(0, 1), Complex(0, -1)})));

  auto s4 = solve_type4(9.0 / 4.0, {Complex(0, 0.5), Complex(0, -0.5)});
  REQUIRE(std::holds_alternative<WpRationalSolution>(s4));
  const auto& w4 = std::get<WpRationalSolution>(s4);
  CHECK(close(w4.L, 1.0, 1e-14));
  CHECK(close(w4.inv.g2, -1.0 / 16.0, 1e-15));
  CHECK(w4.inv.g3 == 0.0);
  CHECK(std::holds_alternative<NoSolution>(solve_type4(9.0 / 4.0, {Complex(0, 1), Complex(0, -1)})));

  const CanonicalForm f3{CanonicalKind::kIII, 3, -64.0 / 27.0, {i3, -i3}, {-1.0, 0.0, 1.0}};
  CHECK(verify_solution(f3.to_equation(), w3, {50, 1e-6, 42, 2.0, 1e-2}).pass);
  const CanonicalForm f4{CanonicalKind::kIV, 2, 9.0 / 4.0, {Complex(0, 0.5), Complex(0, -0.5)}, {0.0, 1.0, -1.0}};
  CHECK(verify_solution(f4.to_equation(), w4, {50, 1e-6, 42, 2.0, 1e-2}).pass);
}

TEST_CASE("solve normalizes kinds II-IV placed elsewhere") {
  const Complex r5(0.0, std::sqrt(5.0));
  const CanonicalForm base{CanonicalKind::kII, 3, 10584.0, {r5, -r5}, {4.0, -3.0, 0.0}};
  // u = m(v) with v the normalized variable; the moved equation is in u
  const MobiusTransform m(2.0, 1.0, 0.0, 1.0);
  const SchwarzianEquation moved = transform_equation(base.to_equation(), inverse(m));
  const SolveOutcome out = solve(moved);
  REQUIRE(std::holds_alternative<Solution>(out.result));
  CHECK(out.certificate.pass);
  CHECK(verify_solution(moved, std::get<Solution>(out.result)).pass);

  const CanonicalForm bad{CanonicalKind::kII, 3, 1.0, {5.0, 6.0}, {1.0, 2.0, 3.0}};
  const SolveOutcome none = solve(bad.to_equation());
  CHECK(std::holds_alternative<NoSolution>(none.result));
}

TEST_CASE("kind V") {
  const Complex r2(0.0, std::sqrt(2.0));
  CanonicalForm f{CanonicalKind::kV, 1, 0.5, {r2, -r2}, {-1.0, 1.0}};
  auto s = solve_type5(0.5, f);
  REQUIRE(std::holds_alternative<TrigSolution>(s));
  CHECK(close(std::get<TrigSolution>(s).alpha, 1.0, 1e-15));
  CHECK(std::get<TrigSolution>(s).outer.is_identity());

  f.c = 2.0;
  s = solve_type5(2.0, f);
  CHECK(close(std::get<TrigSolution>(s).alpha, 2.0, 1e-15));

  f.sigma = {Complex(0, 2), Complex(0, -2)};
  CHECK(std::holds_alternative<Unresolved>(solve_type5(2.0, f)));

  // shifted pair {3, 5}: sigma at 4 ± sqrt(2) i
  const CanonicalForm g{CanonicalKind::kV, 1, 1.5, {4.0 + r2, 4.0 - r2}, {3.0, 5.0}};
  const SolveOutcome out = solve(g.to_equation());
  REQUIRE(std::holds_alternative<Solution>(out.result));
  CHECK(verify_solution(g.to_equation(), std::get<Solution>(out.result)).pass);
}

TEST_CASE("kind VI") {
  CHECK(close(solve_type6(-0.5, 1).alpha, 1.0, 1e-15));
  CHECK(close(solve_type6(-2.0, 1).alpha, 2.0, 1e-15));
  const ExpSolution e = solve_type6(0.25, 2);
  const SchwarzianEquation eq{2, RationalFunctionC::constant(0.25)};
  CHECK(verify_solution(eq, e).pass);
  CHECK_THROWS_AS(solve_type6(0.0, 1), Error);
  const SchwarzianEquation zero{1, RationalFunctionC::constant(0.0)};
  CHECK_THROWS_AS(solve(zero), Error);
}

TEST_CASE("z0 is free") {
  for (const auto& ref : kReferences) {
    const SchwarzianEquation eq{1, RationalFunctionC(ref.scale * kQuartic, kDen)};
    for (const Complex z0 : {Complex(0.3, -0.7), Complex(-1.1, 0.4)}) {
      SolveOptions opt;
      opt.z0 = z0;
      opt.tau_index = ref.index;
      const SolveOutcome out = solve(eq, opt);
      REQUIRE(std::holds_alternative<Solution>(out.result));
      CHECK(std::get<EllipticFractionalSolution>(std::get<Solution>(out.result)).z0 == z0);
      CHECK(verify_solution(eq, std::get<Solution>(out.result)).pass);
    }
  }
}

TEST_CASE("type I poles are simple") {
  const auto g = generate_type1(kTau, 3, -1.0);
  const SolutionEvaluator eval(g.solution);
  // poles where wp(z) = d = 1; wp(ω1) = 2 and wp(ω1+ω3) = 0 on this square lattice,
  // so a pole lies on the segment between them
  const LatticeData L = *Weierstrass(g.solution.inv).lattice();
  const Weierstrass W(g.solution.inv);
  Complex z = L.omega1 + 0.5 * L.omega3;
  for (int k = 0; k < 60; ++k) z -= (W.wp(z).value() - 1.0) / W.wp_prime(z).value();
  REQUIRE(std::abs(W.wp(z).value() - 1.0) < 1e-12);
  Complex prev{};
  for (const double h : {1e-3, 1e-4, 1e-5}) {
    const Complex lim = h * eval.value(z + h).value();
    CHECK(std::abs(lim) > 1e-3);
    if (prev != Complex{}) CHECK(std::abs(lim - prev) < 1e-2 * std::abs(prev));
    prev = lim;
  }
  // residue is -b / wp'(pole)
  CHECK(std::abs(prev - 1.0 / W.wp_prime(z).value()) < 1e-4);
}

TEST_CASE("type I subequation constant") {
  const auto g = generate_type1(kTau, 3, -1.0);
  const Complex K = type1_subequation_constant(kTau, 3, -1.0);
  std::vector<SubequationFactor> fac;
  for (const Complex t : kTau) fac.push_back({t, 1});
  const SubequationSpec spec = SubequationSpec::make(2, K, fac);
  CHECK(verify_subequation(g.solution, spec, {50, 1e-8, 42, 2.0, 1e-2}).pass);
  CHECK(close(estimate_subequation_constant(g.solution, 2, fac, Complex(0.31, 0.17)), K, 1e-10));
}
