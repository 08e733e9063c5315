#include "acceptance.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

#include "commands.hpp"
#include "json_codec.hpp"
#include "schwarzian/error.hpp"
#include "schwarzian/schwarzian.hpp"
#include "schwarzian/solver.hpp"

namespace schwarzian::cli {
namespace {

double rel_err(Complex x, Complex y) { return std::abs(x - y) / std::max(1.0, std::abs(y)); }

std::string sci(double x) {
  std::ostringstream os;
  os.precision(2);
  os << std::scientific << x;
  return os.str();
}

// Collects failures; the first one becomes the detail line.
struct Check {
  bool ok = true;
  std::string first_failure;
  double worst = 0.0;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) first_failure = what;
    ok = ok && cond;
  }
  void measure(double err, double tol, const std::string& what) {
    worst = std::max(worst, err);
    require(err <= tol, what + " (error " + sci(err) + ")");
  }
};

CriterionResult finish(int id, std::string title, const Check& c, const std::string& ok_detail) {
  return {id, std::move(title), c.ok, c.ok ? ok_detail : c.first_failure};
}

SamplingOptions points(int n, double tol) {
  SamplingOptions o;
  o.samples = n;
  o.tolerance = tol;
  return o;
}

PolynomialC poly(std::initializer_list<double> c) {
  std::vector<Complex> v(c.begin(), c.end());
  return PolynomialC(std::move(v));
}

// ---- 1 -------------------------------------------------------------------

CriterionResult reference_solutions() {
  Check c;
  for (const ReferenceCase& rc : reference_cases()) {
    const std::string eq_doc = to_json(rc.equation).dump();
    CliOptions opt;
    opt.tau_index = rc.tau_index;
    const CommandResult solved = cmd_solve(eq_doc, opt);
    c.require(solved.exit_code == 0, rc.name + ": solve exited " + std::to_string(solved.exit_code) + " " + solved.err);
    if (solved.exit_code != 0) continue;
    const Solution s = solution_from_json(parse_document(solved.out));
    const auto* ef = std::get_if<EllipticFractionalSolution>(&s);
    c.require(ef != nullptr, rc.name + ": wrong family");
    if (!ef) continue;
    c.measure(rel_err(ef->a, rc.a), 1e-9, rc.name + ": a");
    c.measure(rel_err(ef->b, rc.b), 1e-9, rc.name + ": b");
    c.measure(rel_err(ef->d, rc.d), 1e-9, rc.name + ": d");
    c.measure(rel_err(ef->inv.g2, rc.g2), 1e-9, rc.name + ": g2");
    c.measure(rel_err(ef->inv.g3, rc.g3), 1e-9, rc.name + ": g3");

    const CommandResult verified = cmd_verify(eq_doc, solved.out, CliOptions{});
    c.require(verified.exit_code == 0, rc.name + ": verify exited " + std::to_string(verified.exit_code));
    if (verified.exit_code == 0) {
      const ResidualReport rep = report_from_json(parse_document(verified.out));
      c.require(rep.sample_count == 200, rc.name + ": expected 200 samples");
      c.measure(rep.max_rel_residual, 1e-6, rc.name + ": residual");
    }
  }
  return finish(1, "type I reference equations: parameters and 200-point verification", c,
                "4 cases; worst error " + sci(c.worst));
}

// ---- 2-4 -----------------------------------------------------------------

CriterionResult family_two() {
  Check c;
  const Complex s5(0.0, std::sqrt(5.0));
  const CanonicalForm form{CanonicalKind::kII, 3, 10584.0, {s5, -s5}, {4.0, -3.0, 0.0}};
  const SchwarzianEquation eq = form.to_equation();
  const auto r = solve_type2(10584.0, form.sigma);
  const auto* s = std::get_if<WpRationalSolution>(&r);
  c.require(s != nullptr, "admissible sigma rejected");
  if (s) {
    c.measure(std::abs(s->inv.g2) + std::abs(s->inv.g3 - 1.0), 1e-12, "invariants (0, 1)");
    const ResidualReport rep = verify_solution(eq, *s, points(50, 1e-6));
    c.require(rep.sample_count == 50, "fewer than 50 generic points");
    c.measure(rep.max_rel_residual, 1e-6, "residual");
  }
  c.require(std::holds_alternative<NoSolution>(solve_type2(10584.0, {1.0, 2.0})), "sigma {1, 2} accepted");
  const CanonicalForm bad{CanonicalKind::kII, 3, 10584.0, {1.0, 2.0}, {4.0, -3.0, 0.0}};
  c.require(std::holds_alternative<NoSolution>(solve(bad.to_equation()).result), "full pipeline accepted sigma {1, 2}");
  return finish(2, "family II: c = 10584", c, "residual " + sci(c.worst) + "; sigma {1, 2} rejected");
}

CriterionResult family_three() {
  Check c;
  const Complex cc = -64.0 / 27.0;
  const Complex s3(0.0, 1.0 / std::sqrt(3.0));
  // c (u^2 + 1/3)^3 / (u^2 (u^2 - 1)^2)
  const PolynomialC u2p = poly({1.0 / 3.0, 0.0, 1.0});
  const PolynomialC den = poly({0.0, 0.0, 1.0}) * pow(poly({-1.0, 0.0, 1.0}), 2);
  const SchwarzianEquation eq(3, RationalFunctionC(cc * pow(u2p, 3), den));
  const auto r = solve_type3(cc, {s3, -s3});
  const auto* s = std::get_if<WpRationalSolution>(&r);
  c.require(s != nullptr, "admissible sigma rejected");
  if (s) {
    c.measure(std::abs(s->L - 1.0), 1e-12, "principal L = 1");
    c.measure(std::abs(s->inv.g3 - cc / 432.0), 1e-15, "g3 = c/432");
    const ResidualReport rep = verify_solution(eq, *s, points(50, 1e-6));
    c.require(rep.sample_count == 50, "fewer than 50 generic points");
    c.measure(rep.max_rel_residual, 1e-6, "residual");
  }
  c.require(std::holds_alternative<NoSolution>(solve_type3(cc, {Complex(0, 1), Complex(0, -1)})), "sigma {i, -i} accepted");
  return finish(3, "family III: L = 1", c, "residual " + sci(c.worst));
}

CriterionResult family_four() {
  Check c;
  const Complex cc = 9.0 / 4.0;
  // c (u^2 + 1/4)^2 / (u^2 (u^2 - 1))
  const PolynomialC num = cc * pow(poly({0.25, 0.0, 1.0}), 2);
  const PolynomialC den = poly({0.0, 0.0, 1.0}) * poly({-1.0, 0.0, 1.0});
  const SchwarzianEquation eq(2, RationalFunctionC(num, den));
  const auto r = solve_type4(cc, {Complex(0, 0.5), Complex(0, -0.5)});
  const auto* s = std::get_if<WpRationalSolution>(&r);
  c.require(s != nullptr, "admissible sigma rejected");
  if (s) {
    c.measure(std::abs(s->L - 1.0), 1e-12, "principal L = 1");
    c.measure(std::abs(s->inv.g2 + 1.0 / 16.0) + std::abs(s->inv.g3), 1e-15, "invariants (-1/16, 0)");
    const ResidualReport rep = verify_solution(eq, *s, points(50, 1e-6));
    c.require(rep.sample_count == 50, "fewer than 50 generic points");
    c.measure(rep.max_rel_residual, 1e-6, "residual");
  }
  c.require(std::holds_alternative<NoSolution>(solve_type4(cc, {Complex(0, 1), Complex(0, -1)})), "sigma {i, -i} accepted");
  return finish(4, "family IV: L = 1", c, "residual " + sci(c.worst));
}

// ---- 5 -------------------------------------------------------------------

CriterionResult trig_and_exp() {
  Check c;
  const Complex s2(0.0, std::sqrt(2.0));
  const CanonicalForm v{CanonicalKind::kV, 1, 0.5, {s2, -s2}, {1.0, -1.0}};
  const auto t = solve_type5(0.5, v);
  const auto* ts = std::get_if<TrigSolution>(&t);
  c.require(ts != nullptr, "kind V pattern unresolved");
  if (ts) c.measure(std::abs(ts->alpha - 1.0), 1e-15, "alpha = 1");
  const TrigSolution sine{1.0, 0.0, MobiusTransform::identity()};
  c.measure(verify_solution(v.to_equation(), sine, points(50, 1e-8)).max_rel_residual, 1e-8, "sin z residual");

  const ExpSolution ez = solve_type6(-0.5, 1);
  c.measure(std::abs(ez.alpha - 1.0), 1e-15, "alpha = 1 for S = -1/2");
  const SchwarzianEquation e1(1, RationalFunctionC::constant(-0.5));
  c.measure(verify_solution(e1, ExpSolution{1.0, MobiusTransform::identity()}, points(50, 1e-10)).max_rel_residual,
            1e-10, "e^z residual");

  const ExpSolution sq = solve_type6(0.25, 2);
  const SchwarzianEquation e2(2, RationalFunctionC::constant(0.25));
  c.measure(verify_solution(e2, sq, points(50, 1e-10)).max_rel_residual, 1e-10, "S^2 = 1/4 residual");
  return finish(5, "trigonometric and exponential solutions", c, "worst residual " + sci(c.worst));
}

// ---- 6 -------------------------------------------------------------------

CriterionResult type1_roundtrip() {
  Check c;
  PointSampler rng(20240601);
  int done = 0;
  double param_err = 0.0, resid = 0.0, sub = 0.0, disc = 0.0;
  while (done < 100) {
    std::array<Complex, 4> tau;
    for (auto& t : tau) t = rng.in_square(2.0);
    double gap = 1e300;
    for (std::size_t j = 0; j < 4; ++j) {
      for (std::size_t k = j + 1; k < 4; ++k) gap = std::min(gap, std::abs(tau[j] - tau[k]));
    }
    const int i = 1 + static_cast<int>(rng.uniform() * 4.0);
    const Complex b = std::polar(0.5 + 1.5 * rng.uniform(), 2.0 * std::numbers::pi * rng.uniform());
    if (gap < 0.25) continue;
    ++done;
    const std::string tag = "instance " + std::to_string(done);

    const Type1Generated g = generate_type1(tau, i, b);
    const auto solved = solve_type1(g.coefficients, i);
    const auto* s = std::get_if<EllipticFractionalSolution>(&solved);
    c.require(s != nullptr, tag + ": not recovered");
    if (!s) continue;
    for (const auto& [got, want] : {std::pair{s->a, g.solution.a}, std::pair{s->b, g.solution.b},
                                    std::pair{s->d, g.solution.d}, std::pair{s->inv.g2, g.solution.inv.g2},
                                    std::pair{s->inv.g3, g.solution.inv.g3}}) {
      param_err = std::max(param_err, std::abs(got - want) / std::max(std::abs(want), 1e-6));
    }
    c.require(param_err <= 1e-9, tag + ": parameters differ (" + sci(param_err) + ")");

    const SchwarzianEquation eq(1, RationalFunctionC(PolynomialC(std::vector<Complex>(g.coefficients.r.begin(),
                                                                                       g.coefficients.r.end())),
                                                     PolynomialC::from_roots(std::vector<Complex>(tau.begin(), tau.end()), 1.0)));
    const ResidualReport rep = verify_solution(eq, g.solution, points(50, 1e-6));
    resid = std::max(resid, rep.max_rel_residual);
    c.require(rep.pass, tag + ": Schwarzian residual " + sci(rep.max_rel_residual));

    std::vector<SubequationFactor> f;
    for (const Complex t : tau) f.push_back({t, 1});
    const SubequationSpec spec = SubequationSpec::make(2, type1_subequation_constant(tau, i, b), f);
    const ResidualReport srep = verify_subequation(g.solution, spec, points(50, 1e-6));
    sub = std::max(sub, srep.max_rel_residual);
    c.require(srep.pass, tag + ": subequation residual " + sci(srep.max_rel_residual));

    const Complex delta = type1_discriminant(tau, i, b);
    const double de = std::abs(g.solution.inv.discriminant() - delta) / std::abs(delta);
    disc = std::max(disc, de);
    c.require(de <= 1e-8, tag + ": discriminant identity " + sci(de));
  }
  return finish(6, "type I generate/solve roundtrip (100 instances)", c,
                "params " + sci(param_err) + ", residual " + sci(resid) + ", subequation " + sci(sub) +
                    ", discriminant " + sci(disc));
}

// ---- 7 -------------------------------------------------------------------

// ω1 for (g2, g3) = (4, 0): ∫_1^∞ dt / √(4t^3 - 4t). With t = 1 + tan^2 θ the
// integrand becomes 1/√(1 + cos^2 θ), smooth and π-periodic, so the
// trapezoid rule over a full period converges geometrically.
double quadrature_omega1_g2_4() {
  constexpr int n = 256;
  double sum = 0.0;
  for (int k = 0; k < n; ++k) {
    const double th = std::numbers::pi * k / n;
    sum += 1.0 / std::sqrt(1.0 + std::cos(th) * std::cos(th));
  }
  return 0.5 * std::numbers::pi * sum / n;
}

CriterionResult wp_engine() {
  Check c;
  const std::vector<WeierstrassInvariants> cases = {
      {16.0, 0.0}, {4.0, 0.0}, {0.0, 1.0}, {Complex(1.0, 2.0), Complex(-0.5, 0.3)}, {64.0, 0.0}, {Complex(3.0, -1.0), 2.0}};
  PointSampler rng(7);
  double ode = 0, dup = 0, par = 0, hom = 0, per = 0;
  for (const auto& inv : cases) {
    const Weierstrass w(inv);
    const LatticeData lat = *w.lattice();
    int n = 0;
    while (n < 200) {
      const Complex z = std::polar(0.1 + 2.9 * rng.uniform(), 2.0 * std::numbers::pi * rng.uniform());
      if (w.lattice_distance(z) < 1e-2 || w.lattice_distance(2.0 * z) < 1e-2) continue;
      ++n;
      const Complex p = w.wp(z).value(), dp = w.wp_prime(z).value(), ddp = w.wp_second(z).value();
      const double o = std::abs(dp * dp - (4.0 * p * p * p - inv.g2 * p - inv.g3)) / std::max(1.0, std::pow(std::abs(p), 3));
      ode = std::max(ode, o);
      c.require(o <= 1e-9, "ODE residual");

      const Complex p2 = w.wp(2.0 * z).value();
      const Complex formula = ddp * ddp / (4.0 * dp * dp) - 2.0 * p;
      dup = std::max(dup, rel_err(formula, p2));
      c.require(rel_err(formula, p2) <= 1e-8, "duplication");

      const double pe = std::max(rel_err(w.wp(-z).value(), p), rel_err(-w.wp_prime(-z).value(), dp));
      par = std::max(par, pe);
      c.require(pe <= 1e-12, "parity");

      const double pp = std::max(rel_err(w.wp(z + 2.0 * lat.omega1).value(), p), rel_err(w.wp(z + 2.0 * lat.omega3).value(), p));
      per = std::max(per, pp);
      c.require(pp <= 1e-8, "periodicity");

      for (const Complex t : {Complex(2.0), Complex(1.0, 1.0)}) {
        const Weierstrass scaled({inv.g2 / std::pow(t, 4), inv.g3 / std::pow(t, 6)});
        const double he = rel_err(scaled.wp(t * z).value(), p / (t * t));
        hom = std::max(hom, he);
        c.require(he <= 1e-9, "homogeneity");
      }
    }
  }
  const double w1 = half_periods({4.0, 0.0}).omega1.real();
  const double qerr = std::abs(w1 - quadrature_omega1_g2_4());
  c.require(qerr <= 1e-8, "half-period vs quadrature (" + sci(qerr) + ")");
  return finish(7, "wp engine identities", c,
                "ode " + sci(ode) + ", duplication " + sci(dup) + ", parity " + sci(par) + ", homogeneity " + sci(hom) +
                    ", periodicity " + sci(per) + ", omega1 " + sci(qerr));
}

// ---- 8 -------------------------------------------------------------------

std::vector<Solution> one_of_each_family() {
  std::vector<Solution> out;
  const ReferenceCase rc = reference_cases().front();
  EllipticFractionalSolution ef;
  ef.a = rc.a;
  ef.b = rc.b;
  ef.d = rc.d;
  ef.inv = {rc.g2, rc.g3};
  out.emplace_back(ef);
  const Complex s5(0.0, std::sqrt(5.0)), s3(0.0, 1.0 / std::sqrt(3.0));
  out.emplace_back(std::get<WpRationalSolution>(solve_type2(10584.0, {s5, -s5})));
  out.emplace_back(std::get<WpRationalSolution>(solve_type3(-64.0 / 27.0, {s3, -s3})));
  out.emplace_back(std::get<WpRationalSolution>(solve_type4(2.25, {Complex(0, 0.5), Complex(0, -0.5)})));
  out.emplace_back(TrigSolution{1.0, 0.3, MobiusTransform::identity()});
  out.emplace_back(ExpSolution{Complex(1.0, 0.5), MobiusTransform::identity()});
  return out;
}

MobiusTransform random_mobius(PointSampler& rng) {
  while (true) {
    const Complex a = rng.in_square(2.0), b = rng.in_square(2.0), cc = rng.in_square(2.0), d = rng.in_square(2.0);
    if (std::abs(a * d - b * cc) > 0.25) return {a, b, cc, d};
  }
}

CriterionResult mobius_invariance() {
  Check c;
  PointSampler rng(99);
  double worst = 0.0, bare = 0.0;
  for (const Solution& s : one_of_each_family()) {
    const SolutionEvaluator base(s);
    for (int k = 0; k < 20; ++k) {
      const MobiusTransform m = random_mobius(rng);
      const SolutionEvaluator composed(compose(m, s));
      SamplingOptions o = points(20, 1e-8);
      o.seed = 1000 + static_cast<std::uint64_t>(k);
      for (const Complex z : generic_points(composed, o)) {
        const EvaluatedJet e0 = base.evaluate(z);
        if (!is_generic(e0, 1e-2)) continue;
        const Complex s0 = schwarzian_of_jet(e0.jet);
        const Complex s1 = schwarzian_of_jet(composed.jet(z));
        worst = std::max(worst, rel_err(s1, s0));
        c.require(rel_err(s1, s0) <= 1e-8, family_name(s) + ": Schwarzian changed under composition");
      }
    }
  }
  for (int k = 0; k < 20; ++k) {
    const MobiusTransform m = random_mobius(rng);
    const Complex z = rng.in_square(2.0);
    const Complex pole = -m.d() / m.c();
    const double dist = std::abs(z - pole);
    if (dist < 0.2) continue;
    const double exact = std::abs(schwarzian_of_jet(m.jet(z)));
    const double numeric = std::abs(schwarzian_numeric([&](Complex w) { return m.apply(w).value(); }, z,
                                                       std::min(0.3, 0.5 * dist), 64));
    bare = std::max({bare, exact, numeric});
    c.require(exact <= 1e-8 && numeric <= 1e-8, "Schwarzian of a bare Mobius map is not zero");
  }
  return finish(8, "Mobius invariance (20 maps x 6 families)", c,
                "worst relative change " + sci(worst) + ", bare map " + sci(bare));
}

// ---- 9 -------------------------------------------------------------------

CriterionResult fixed_point_fixture() {
  Check c;
  for (const Complex shift : {Complex(0.0), Complex(1.0, 1.0)}) {
    const auto f = [shift](Complex z) { return -1.5 / ((z + shift) * (z + shift)); };
    PointSampler rng(5);
    int n = 0;
    while (n < 20) {
      const Complex z = rng.in_square(2.0);
      const double dist = std::abs(z + shift);
      if (dist < 0.5) continue;
      ++n;
      const Complex s = schwarzian_numeric(f, z, std::min(0.3, 0.5 * dist), 64);
      c.measure(rel_err(s, f(z)), 1e-8, "S(f) != f");
    }
  }
  return finish(9, "numeric Schwarzian fixed point S(f) = f", c, "40 points, worst " + sci(c.worst));
}

// ---- 10 ------------------------------------------------------------------

CriterionResult negative_controls() {
  Check c;
  const std::vector<ReferenceCase> cases = reference_cases();
  const CanonicalForm form = std::get<CanonicalForm>(classify(cases[0].equation));
  const TypeICoefficients base = TypeICoefficients::from_form(form);
  c.require(std::holds_alternative<EllipticFractionalSolution>(solve_type1(base)), "unperturbed coefficients rejected");
  for (std::size_t j = 0; j < 5; ++j) {
    TypeICoefficients p = base;
    p.r[j] += 1e-3;
    c.require(std::holds_alternative<NoSolution>(solve_type1(p)), "perturbed r" + std::to_string(j) + " accepted");
  }
  const auto solution_doc = [](const ReferenceCase& rc) {
    CliOptions opt;
    opt.tau_index = rc.tau_index;
    return cmd_solve(to_json(rc.equation).dump(), opt).out;
  };
  const std::string s1 = solution_doc(cases[0]), s2 = solution_doc(cases[1]);
  const std::string e1 = to_json(cases[0].equation).dump(), e2 = to_json(cases[1].equation).dump();
  c.require(cmd_verify(e1, s2, CliOptions{}).exit_code != 0, "first equation accepted the second solution");
  c.require(cmd_verify(e2, s1, CliOptions{}).exit_code != 0, "second equation accepted the first solution");
  return finish(10, "negative controls", c, "5 perturbations rejected; swapped solutions fail verification");
}

}  // namespace

std::vector<ReferenceCase> reference_cases() {
  const PolynomialC quartic = poly({1.0, 4.0, 14.0, 20.0, 25.0});
  const PolynomialC den = poly({0.0, -1.0, -3.0, 1.0, 3.0});  // u (u-1) (u+1) (3u+1)
  const auto eq = [&](Complex num_scale, Complex den_scale) {
    return SchwarzianEquation(1, RationalFunctionC(num_scale * quartic, den_scale * den));
  };
  return {
      {"pole value 0", eq(3.0, 2.0), 3, 0.0, -1.0, 1.0, 16.0, 0.0},
      {"pole value 1", eq(3.0, 1.0), 4, 1.0, 16.0, -12.0, 64.0, 0.0},
      {"pole value -1", eq(-3.0, 1.0), 1, -1.0, 8.0, 8.0, 64.0, 0.0},
      {"pole value -1/3", eq(27.0, 1.0), 2, -1.0 / 3.0, 16.0, 12.0, 5184.0, 0.0},
  };
}

std::vector<CriterionResult> run_acceptance() {
  const std::vector<std::function<CriterionResult()>> all = {
      reference_solutions, family_two,        family_three,      family_four,        trig_and_exp,
      type1_roundtrip,     wp_engine,         mobius_invariance, fixed_point_fixture, negative_controls};
  std::vector<CriterionResult> out;
  for (std::size_t k = 0; k < all.size(); ++k) {
    try {
      out.push_back(all[k]());
    } catch (const std::exception& e) {
      out.push_back({static_cast<int>(k) + 1, "criterion " + std::to_string(k + 1), false,
                     std::string("threw: ") + e.what()});
    }
  }
  return out;
}

std::string format(const CriterionResult& r) {
  return std::string(r.pass ? "PASS" : "FAIL") + " [" + std::to_string(r.id) + "] " + r.title + ": " + r.detail;
}

}  // namespace schwarzian::cli
