#include "json_codec.hpp"

#include <cmath>

#include "schwarzian/error.hpp"

namespace schwarzian::cli {
namespace {

[[noreturn]] void invalid(const std::string& msg) { throw Error(ErrorCode::kInvalidArgument, msg); }

const json& member(const json& j, const char* key, const std::string& where) {
  if (!j.is_object()) invalid(where + ": expected a JSON object");
  const auto it = j.find(key);
  if (it == j.end()) invalid(where + ": missing field \"" + key + "\"");
  return *it;
}

Complex optional_complex(const json& j, const char* key, const std::string& where) {
  const auto it = j.find(key);
  if (it == j.end()) return 0.0;
  return complex_from_json(*it, where + "." + key);
}

std::vector<Complex> complex_list(const json& j, const std::string& what) {
  if (!j.is_array()) invalid(what + ": expected an array of complex numbers");
  std::vector<Complex> out;
  for (std::size_t k = 0; k < j.size(); ++k) out.push_back(complex_from_json(j[k], what + "[" + std::to_string(k) + "]"));
  return out;
}

json complex_list_json(const std::vector<Complex>& v) {
  json out = json::array();
  for (const Complex z : v) out.push_back(to_json(z));
  return out;
}

double finite_number(const json& j, const std::string& what) {
  if (!j.is_number()) invalid(what + ": expected a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) invalid(what + ": must be finite");
  return x;
}

void put_outer(json& j, const MobiusTransform& m) {
  if (!(m.b() == 0.0 && m.c() == 0.0 && m.a() == m.d())) j["outer"] = to_json(m);
}

MobiusTransform get_outer(const json& j) {
  const auto it = j.find("outer");
  return it == j.end() ? MobiusTransform::identity() : mobius_from_json(*it);
}

void check_invariants(const json& j, const WeierstrassInvariants& expected, const std::string& family) {
  const auto it = j.find("invariants");
  if (it == j.end()) return;
  const WeierstrassInvariants got = invariants_from_json(*it);
  const auto close = [](Complex a, Complex b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b)); };
  if (!close(got.g2, expected.g2) || !close(got.g3, expected.g3)) {
    invalid(family + ": invariants disagree with the family parameter c");
  }
}

}  // namespace

json parse_document(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    std::size_t line = 1, column = 1;
    const std::size_t end = std::min(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t k = 0; k < end; ++k) {
      if (text[k] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    invalid("malformed JSON at line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
            e.what());
  }
}

json to_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j, const std::string& what) {
  if (j.is_number()) return finite_number(j, what);
  if (!j.is_array() || j.size() != 2) invalid(what + ": complex numbers are [re, im]");
  return {finite_number(j[0], what + ".re"), finite_number(j[1], what + ".im")};
}

json to_json(const PolynomialC& p) { return complex_list_json(p.coefficients()); }

PolynomialC polynomial_from_json(const json& j, const std::string& what) {
  return PolynomialC(complex_list(j, what));
}

json to_json(const MobiusTransform& m) {
  return json::array({to_json(m.a()), to_json(m.b()), to_json(m.c()), to_json(m.d())});
}

MobiusTransform mobius_from_json(const json& j) {
  const std::vector<Complex> c = complex_list(j, "outer");
  if (c.size() != 4) invalid("outer: expected [a, b, c, d]");
  return {c[0], c[1], c[2], c[3]};
}

json to_json(const WeierstrassInvariants& inv) { return {{"g2", to_json(inv.g2)}, {"g3", to_json(inv.g3)}}; }

WeierstrassInvariants invariants_from_json(const json& j) {
  return {complex_from_json(member(j, "g2", "invariants"), "g2"), complex_from_json(member(j, "g3", "invariants"), "g3")};
}

json to_json(const SchwarzianEquation& eq) {
  return {{"p", eq.p}, {"numerator", to_json(eq.R.numerator())}, {"denominator", to_json(eq.R.denominator())}};
}

SchwarzianEquation equation_from_json(const json& j) {
  if (!j.is_object()) invalid("equation: expected a JSON object");
  if (j.contains("kind")) {
    const json& k = j["kind"];
    if (!k.is_string()) invalid("equation.kind: expected a string");
    const auto kind = parse_kind(k.get<std::string>());
    if (!kind) invalid("equation.kind: unknown kind \"" + k.get<std::string>() + "\"");
    CanonicalForm form;
    form.kind = *kind;
    form.c = complex_from_json(member(j, "c", "equation"), "equation.c");
    form.sigma = j.contains("sigma") ? complex_list(j["sigma"], "equation.sigma") : std::vector<Complex>{};
    form.tau = j.contains("tau") ? complex_list(j["tau"], "equation.tau") : std::vector<Complex>{};
    form.p = canonical_power(*kind);
    if (j.contains("p")) {
      const json& p = j["p"];
      if (!p.is_number_integer()) invalid("equation.p: expected an integer");
      form.p = p.get<int>();
      if (*kind != CanonicalKind::kVI && form.p != canonical_power(*kind)) {
        invalid("equation.p does not match the exponent of this kind");
      }
    }
    return form.to_equation();
  }
  const json& p = member(j, "p", "equation");
  if (!p.is_number_integer() || p.get<long long>() < 1) invalid("equation.p: expected an integer >= 1");
  PolynomialC num = polynomial_from_json(member(j, "numerator", "equation"), "equation.numerator");
  PolynomialC den = polynomial_from_json(member(j, "denominator", "equation"), "equation.denominator");
  return {p.get<int>(), RationalFunctionC(std::move(num), std::move(den))};
}

json to_json(const CanonicalForm& form) {
  return {{"canonical", true},
          {"kind", to_string(form.kind)},
          {"p", form.p},
          {"c", to_json(form.c)},
          {"sigma", complex_list_json(form.sigma)},
          {"tau", complex_list_json(form.tau)}};
}

json to_json(const NotCanonical& nc) {
  return {{"canonical", false},
          {"p", nc.p},
          {"numerator_multiplicities", nc.numerator_multiplicities},
          {"denominator_multiplicities", nc.denominator_multiplicities},
          {"reason", nc.reason}};
}

json to_json(const Solution& s) {
  json j;
  j["family"] = family_name(s);
  if (const auto* ef = std::get_if<EllipticFractionalSolution>(&s)) {
    j["a"] = to_json(ef->a);
    j["b"] = to_json(ef->b);
    j["d"] = to_json(ef->d);
    j["z0"] = to_json(ef->z0);
    j["invariants"] = to_json(ef->inv);
  } else if (const auto* wr = std::get_if<WpRationalSolution>(&s)) {
    j["c"] = to_json(wr->c);
    if (wr->family != WpFamily::kII) j["L"] = to_json(wr->L);
    j["z0"] = to_json(wr->z0);
    j["invariants"] = to_json(wr->inv);
  } else if (const auto* tr = std::get_if<TrigSolution>(&s)) {
    j["alpha"] = to_json(tr->alpha);
    j["beta"] = to_json(tr->beta);
  } else {
    j["alpha"] = to_json(std::get<ExpSolution>(s).alpha);
  }
  put_outer(j, outer_map(s));
  return j;
}

Solution solution_from_json(const json& j) {
  const json& fam = member(j, "family", "solution");
  if (!fam.is_string()) invalid("solution.family: expected a string");
  const std::string family = fam.get<std::string>();
  if (family == "elliptic-fractional") {
    EllipticFractionalSolution s;
    s.a = complex_from_json(member(j, "a", "solution"), "a");
    s.b = complex_from_json(member(j, "b", "solution"), "b");
    s.d = complex_from_json(member(j, "d", "solution"), "d");
    s.z0 = optional_complex(j, "z0", "solution");
    s.inv = invariants_from_json(member(j, "invariants", "solution"));
    s.outer = get_outer(j);
    if (s.b == 0.0) invalid("elliptic-fractional: b must be nonzero");
    if (!s.inv.is_nondegenerate()) invalid("elliptic-fractional: invariants have zero discriminant");
    return s;
  }
  if (family.rfind("wp-rational-", 0) == 0) {
    WpRationalSolution s;
    const std::string tag = family.substr(12);
    if (tag == "II") {
      s.family = WpFamily::kII;
    } else if (tag == "III") {
      s.family = WpFamily::kIII;
    } else if (tag == "IV") {
      s.family = WpFamily::kIV;
    } else {
      invalid("solution.family: unknown family \"" + family + "\"");
    }
    s.c = complex_from_json(member(j, "c", "solution"), "c");
    if (s.c == 0.0) invalid(family + ": c must be nonzero");
    s.z0 = optional_complex(j, "z0", "solution");
    switch (s.family) {
      case WpFamily::kII:
        s.inv = {0.0, s.c / 10584.0};
        break;
      case WpFamily::kIII:
        s.L = complex_from_json(member(j, "L", "solution"), "L");
        if (std::abs(std::pow(s.L, 6) + 27.0 * s.c / 64.0) > 1e-10 * std::abs(s.c)) {
          invalid(family + ": L^6 must equal -27c/64");
        }
        s.inv = {0.0, s.c / 432.0};
        break;
      case WpFamily::kIV:
        s.L = complex_from_json(member(j, "L", "solution"), "L");
        if (std::abs(9.0 * std::pow(s.L, 4) / 4.0 - s.c) > 1e-10 * std::abs(s.c)) {
          invalid(family + ": c must equal 9 L^4 / 4");
        }
        s.inv = {-s.c / 36.0, 0.0};
        break;
    }
    check_invariants(j, s.inv, family);
    s.outer = get_outer(j);
    return s;
  }
  if (family == "trig") {
    TrigSolution s;
    s.alpha = complex_from_json(member(j, "alpha", "solution"), "alpha");
    s.beta = optional_complex(j, "beta", "solution");
    s.outer = get_outer(j);
    if (s.alpha == 0.0) invalid("trig: alpha must be nonzero");
    return s;
  }
  if (family == "exp") {
    ExpSolution s;
    s.alpha = complex_from_json(member(j, "alpha", "solution"), "alpha");
    s.outer = get_outer(j);
    if (s.alpha == 0.0) invalid("exp: alpha must be nonzero");
    return s;
  }
  invalid("solution.family: unknown family \"" + family + "\"");
}

json to_json(const ResidualReport& r) {
  return {{"sample_count", r.sample_count},
          {"max_abs_residual", r.max_abs_residual},
          {"max_rel_residual", r.max_rel_residual},
          {"worst_point", to_json(r.worst_point)},
          {"excluded_points", r.excluded_points},
          {"pass", r.pass},
          {"tolerance", r.tolerance}};
}

ResidualReport report_from_json(const json& j) {
  ResidualReport r;
  const auto integer = [&](const char* key) {
    const json& v = member(j, key, "report");
    if (!v.is_number_integer()) invalid(std::string("report.") + key + ": expected an integer");
    return v.get<int>();
  };
  r.sample_count = integer("sample_count");
  r.max_abs_residual = finite_number(member(j, "max_abs_residual", "report"), "max_abs_residual");
  r.max_rel_residual = finite_number(member(j, "max_rel_residual", "report"), "max_rel_residual");
  r.worst_point = complex_from_json(member(j, "worst_point", "report"), "worst_point");
  r.excluded_points = integer("excluded_points");
  const json& pass = member(j, "pass", "report");
  if (!pass.is_boolean()) invalid("report.pass: expected a boolean");
  r.pass = pass.get<bool>();
  r.tolerance = finite_number(member(j, "tolerance", "report"), "tolerance");
  return r;
}

json to_json(const LatticeData& lattice) {
  json e = json::array();
  for (const Complex v : lattice.stationary_values) e.push_back(to_json(v));
  return {{"omega1", to_json(lattice.omega1)}, {"omega3", to_json(lattice.omega3)}, {"stationary_values", e}};
}

}  // namespace schwarzian::cli
