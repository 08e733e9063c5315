#include "schwarzian/solution.hpp"

#include <cmath>

#include "schwarzian/error.hpp"
#include "schwarzian/schwarzian.hpp"

namespace schwarzian {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Jets of wp and wp' at a regular point, from the differential equation.
struct WpJets {
  JetValue p;
  JetValue dp;
};

WpJets wp_jets(Complex p, Complex dp, Complex g2) {
  const Complex ddp = 6.0 * p * p - 0.5 * g2;
  const Complex d3p = 12.0 * p * dp;
  const Complex d4p = 12.0 * (dp * dp + p * ddp);
  return {{p, dp, ddp, d3p}, {dp, ddp, d3p, d4p}};
}

bool vanishes(Complex x) { return x == 0.0 || !is_finite(1.0 / x); }

}  // namespace

const char* to_string(WpFamily f) noexcept {
  switch (f) {
    case WpFamily::kII: return "II";
    case WpFamily::kIII: return "III";
    case WpFamily::kIV: return "IV";
  }
  return "?";
}

std::string family_name(const Solution& s) {
  return std::visit(overloaded{
                        [](const EllipticFractionalSolution&) { return std::string("elliptic-fractional"); },
                        [](const WpRationalSolution& w) { return std::string("wp-rational-") + to_string(w.family); },
                        [](const TrigSolution&) { return std::string("trig"); },
                        [](const ExpSolution&) { return std::string("exp"); },
                    },
                    s);
}

const MobiusTransform& outer_map(const Solution& s) {
  return std::visit([](const auto& v) -> const MobiusTransform& { return v.outer; }, s);
}

Solution compose(const MobiusTransform& m, const Solution& s) {
  return std::visit(
      [&](auto v) -> Solution {
        v.outer = compose(m, v.outer);
        return v;
      },
      s);
}

Solution translate(const Solution& s, Complex delta) {
  return std::visit(overloaded{
                        [&](EllipticFractionalSolution v) -> Solution {
                          v.z0 += delta;
                          return v;
                        },
                        [&](WpRationalSolution v) -> Solution {
                          v.z0 += delta;
                          return v;
                        },
                        [&](TrigSolution v) -> Solution {
                          v.beta -= v.alpha * delta;
                          return v;
                        },
                        [&](ExpSolution v) -> Solution {
                          v.outer = compose(v.outer, MobiusTransform(std::exp(-v.alpha * delta), 0.0, 0.0, 1.0));
                          return v;
                        },
                    },
                    s);
}

std::optional<WeierstrassInvariants> invariants_of(const Solution& s) {
  if (const auto* ef = std::get_if<EllipticFractionalSolution>(&s)) return ef->inv;
  if (const auto* wr = std::get_if<WpRationalSolution>(&s)) return wr->inv;
  return std::nullopt;
}

SolutionEvaluator::SolutionEvaluator(Solution s) : solution_(std::move(s)) {
  if (const auto inv = invariants_of(solution_)) engine_.emplace(*inv);
  if (const auto* ef = std::get_if<EllipticFractionalSolution>(&solution_); ef && ef->b == 0.0) {
    throw Error(ErrorCode::kInvalidArgument, "elliptic-fractional solution requires b != 0");
  }
}

EvaluatedJet SolutionEvaluator::evaluate(Complex z) const {
  if (!is_finite(z)) throw Error(ErrorCode::kInvalidArgument, "evaluation point must be finite");
  EvaluatedJet out;
  JetValue core;

  const auto pole = [&]() {
    out.is_pole = true;
    return out;
  };

  if (const auto* ef = std::get_if<EllipticFractionalSolution>(&solution_)) {
    const Complex w = z - ef->z0;
    const WpValues wv = engine_->evaluate(w);
    out.lattice_distance = engine_->lattice_distance(w);
    if (wv.at_lattice_point) {
      // u = a - b t^2 + O(t^4) near a pole of wp.
      out.at_lattice_point = true;
      core = {ef->a, 0.0, -2.0 * ef->b, 0.0};
    } else {
      const JetValue p = wp_jets(wv.p.value(), wv.dp.value(), ef->inv.g2).p;
      const JetValue den = p - ef->d;
      if (vanishes(den.f)) return pole();
      core = ef->a - ef->b / den;
    }
  } else if (const auto* wr = std::get_if<WpRationalSolution>(&solution_)) {
    const Complex w = z - wr->z0;
    const WpValues wv = engine_->evaluate(w);
    out.lattice_distance = engine_->lattice_distance(w);
    if (wv.at_lattice_point) {
      out.at_lattice_point = true;
      if (wr->family != WpFamily::kII) return pole();
      // u = O((z - z0)^6) at a lattice point for family II.
      core = JetValue::constant(0.0);
    } else {
      const auto [p, dp] = wp_jets(wv.p.value(), wv.dp.value(), wr->inv.g2);
      const Complex c = wr->c, L = wr->L;
      JetValue num, den;
      switch (wr->family) {
        case WpFamily::kII:
          num = JetValue::constant(-3.0 * c);
          den = c - 74088.0 * pow(p, 3);
          break;
        case WpFamily::kIII:
          num = 9.0 * (9.0 * p + L * L) * dp;
          den = 2.0 * L * (81.0 * p * p - 9.0 * L * L * p + std::pow(L, 4));
          break;
        case WpFamily::kIV:
          num = -(pow(8.0 * p + L * L, 2) * dp);
          den = 2.0 * L * p * (64.0 * p * p + std::pow(L, 4));
          break;
      }
      if (vanishes(den.f)) return pole();
      core = num / den;
    }
  } else if (const auto* tr = std::get_if<TrigSolution>(&solution_)) {
    const Complex arg = tr->alpha * z + tr->beta;
    const Complex s = std::sin(arg), c = std::cos(arg), a = tr->alpha;
    core = {s, a * c, -a * a * s, -a * a * a * c};
  } else {
    const auto& ex = std::get<ExpSolution>(solution_);
    const Complex e = std::exp(ex.alpha * z), a = ex.alpha;
    core = {e, a * e, a * a * e, a * a * a * e};
  }

  if (!core.is_finite()) return pole();
  const MobiusTransform& m = outer_map(solution_);
  if (!(m.b() == 0.0 && m.c() == 0.0 && m.a() == m.d())) {
    if (vanishes(m.c() * core.f + m.d())) return pole();
    core = compose_jet(m, core);
    if (!core.is_finite()) return pole();
  }
  out.jet = core;
  return out;
}

JetValue SolutionEvaluator::jet(Complex z) const {
  const EvaluatedJet e = evaluate(z);
  if (e.is_pole) throw Error(ErrorCode::kPoleProximity, "solution has a pole at this point");
  return e.jet;
}

ExtendedComplex SolutionEvaluator::value(Complex z) const {
  const EvaluatedJet e = evaluate(z);
  if (e.is_pole) return ExtendedComplex::infinity();
  return e.jet.f;
}

JetValue solution_jet(const Solution& s, Complex z) { return SolutionEvaluator(s).jet(z); }

}  // namespace schwarzian
