#include "commands.hpp"

#include <sstream>

#include <spdlog/spdlog.h>

#include "acceptance.hpp"
#include "json_codec.hpp"
#include "schwarzian/error.hpp"
#include "schwarzian/solver.hpp"

namespace schwarzian::cli {
namespace {

std::string dump(const json& j) { return j.dump(2) + "\n"; }

CommandResult failure(int code, const std::string& message) { return {code, {}, "error: " + message + "\n"}; }

CommandResult invalid_input(const std::exception& e) { return failure(2, e.what()); }

std::optional<CanonicalKind> kind_of_family(const Solution& s) {
  if (std::holds_alternative<EllipticFractionalSolution>(s)) return CanonicalKind::kI;
  if (const auto* wr = std::get_if<WpRationalSolution>(&s)) {
    switch (wr->family) {
      case WpFamily::kII: return CanonicalKind::kII;
      case WpFamily::kIII: return CanonicalKind::kIII;
      case WpFamily::kIV: return CanonicalKind::kIV;
    }
  }
  if (std::holds_alternative<TrigSolution>(s)) return CanonicalKind::kV;
  return CanonicalKind::kVI;
}

SamplingOptions sampling(const CliOptions& o) {
  SamplingOptions s;
  s.samples = o.samples;
  s.tolerance = o.tolerance;
  s.seed = o.seed;
  return s;
}

}  // namespace

CommandResult cmd_classify(std::string_view equation) {
  Classification cl;
  try {
    cl = classify(equation_from_json(parse_document(equation)));
  } catch (const std::exception& e) {
    return invalid_input(e);
  }
  if (const auto* form = std::get_if<CanonicalForm>(&cl)) {
    spdlog::debug("classified as kind {}", to_string(form->kind));
    return {0, dump(to_json(*form)), {}};
  }
  const auto& nc = std::get<NotCanonical>(cl);
  return {1, dump(to_json(nc)), "not canonical: " + nc.reason + "\n"};
}

CommandResult cmd_solve(std::string_view equation, const CliOptions& options) {
  SchwarzianEquation eq(1, RationalFunctionC::constant(0.0));
  try {
    eq = equation_from_json(parse_document(equation));
  } catch (const std::exception& e) {
    return invalid_input(e);
  }
  SolveOptions so;
  so.z0 = options.z0;
  so.beta = options.beta;
  so.tau_index = options.tau_index;
  so.certification = sampling(options);
  SolveOutcome outcome;
  try {
    outcome = solve(eq, so);
  } catch (const Error& e) {
    switch (e.code()) {
      case ErrorCode::kInternalConsistency:
        return failure(3, e.what());
      case ErrorCode::kDegenerateRelations:
      case ErrorCode::kNoTranscendentalSolution: {
        const json j = {{"status", "no-solution"}, {"reason", e.what()}};
        return {1, dump(j), std::string("no solution: ") + e.what() + "\n"};
      }
      default:
        return invalid_input(e);
    }
  } catch (const std::exception& e) {
    return invalid_input(e);
  }
  if (const auto* s = std::get_if<Solution>(&outcome.result)) {
    json j = to_json(*s);
    j["kind"] = to_string(outcome.form.kind);
    j["certificate"] = to_json(outcome.certificate);
    spdlog::info("certified {} solution, max relative residual {:.3e}", family_name(*s),
                 outcome.certificate.max_rel_residual);
    return {0, dump(j), {}};
  }
  json j;
  std::string reason;
  if (const auto* none = std::get_if<NoSolution>(&outcome.result)) {
    j = {{"status", "no-solution"}, {"kind", to_string(outcome.form.kind)}, {"reason", none->reason},
         {"diagnostics", none->diagnostics}};
    reason = none->reason;
  } else {
    const auto& un = std::get<Unresolved>(outcome.result);
    j = {{"status", "unresolved"}, {"kind", to_string(outcome.form.kind)}, {"reason", un.reason}};
    reason = un.reason;
  }
  return {1, dump(j), "no solution: " + reason + "\n"};
}

CommandResult cmd_verify(std::string_view equation, std::string_view solution, const CliOptions& options) {
  try {
    const SchwarzianEquation eq = equation_from_json(parse_document(equation));
    const Solution s = solution_from_json(parse_document(solution));
    const Classification cl = classify(eq);
    const auto* form = std::get_if<CanonicalForm>(&cl);
    if (!form) return failure(2, "equation is not canonical; cannot match a solution family");
    if (kind_of_family(s) != form->kind) {
      return failure(2, "solution family " + family_name(s) + " does not belong to kind " + to_string(form->kind));
    }
    const ResidualReport report = verify_solution(eq, s, sampling(options));
    spdlog::debug("verify: {} points, {} excluded", report.sample_count, report.excluded_points);
    CommandResult r{report.pass ? 0 : 1, dump(to_json(report)), {}};
    if (!report.pass) {
      std::ostringstream msg;
      msg << "verification failed: max relative residual " << report.max_rel_residual << " > " << report.tolerance
          << "\n";
      r.err = msg.str();
    }
    return r;
  } catch (const std::exception& e) {
    return invalid_input(e);
  }
}

CommandResult cmd_eval(std::string_view solution, std::string_view points) {
  try {
    const Solution s = solution_from_json(parse_document(solution));
    const json pts = parse_document(points);
    if (!pts.is_array()) return failure(2, "points: expected an array of complex numbers");
    const SolutionEvaluator eval(s);
    json values = json::array();
    for (std::size_t k = 0; k < pts.size(); ++k) {
      const Complex z = complex_from_json(pts[k], "points[" + std::to_string(k) + "]");
      const EvaluatedJet e = eval.evaluate(z);
      json row = {{"z", to_json(z)}};
      if (e.is_pole) {
        row["flag"] = "pole";
        row["u"] = nullptr;
      } else {
        row["flag"] = e.at_lattice_point ? "lattice-point" : "regular";
        row["u"] = to_json(e.jet.f);
        row["du"] = to_json(e.jet.f1);
        row["d2u"] = to_json(e.jet.f2);
        row["d3u"] = to_json(e.jet.f3);
      }
      values.push_back(row);
    }
    return {0, dump({{"family", family_name(s)}, {"values", values}}), {}};
  } catch (const std::exception& e) {
    return invalid_input(e);
  }
}

CommandResult cmd_periods(std::string_view invariants) {
  try {
    const WeierstrassInvariants inv = invariants_from_json(parse_document(invariants));
    json j = to_json(half_periods(inv));
    j["discriminant"] = to_json(inv.discriminant());
    return {0, dump(j), {}};
  } catch (const std::exception& e) {
    return invalid_input(e);
  }
}

CommandResult cmd_generate(std::string_view request) {
  try {
    const json j = parse_document(request);
    if (!j.is_object()) return failure(2, "generate: expected a JSON object");
    const json& t = j.contains("tau") ? j["tau"] : json();
    if (!t.is_array() || t.size() != 4) return failure(2, "generate: \"tau\" must hold four complex numbers");
    std::array<Complex, 4> tau;
    for (std::size_t k = 0; k < 4; ++k) tau[k] = complex_from_json(t[k], "tau[" + std::to_string(k) + "]");
    if (!j.contains("i") || !j["i"].is_number_integer()) return failure(2, "generate: \"i\" must be an integer 1..4");
    const int i = j["i"].get<int>();
    if (i < 1 || i > 4) return failure(2, "generate: \"i\" must be an integer 1..4");
    if (!j.contains("b")) return failure(2, "generate: missing \"b\"");
    const Complex b = complex_from_json(j["b"], "b");
    const Type1Generated g = generate_type1(tau, i, b);
    const PolynomialC num(std::vector<Complex>(g.coefficients.r.begin(), g.coefficients.r.end()));
    const PolynomialC den = PolynomialC::from_roots(std::vector<Complex>(tau.begin(), tau.end()), 1.0);
    const SchwarzianEquation eq(1, RationalFunctionC(num, den));
    json r = json::array();
    for (const Complex x : g.coefficients.r) r.push_back(to_json(x));
    const json out = {{"coefficients", {{"r", r}, {"tau", t}}},
                      {"equation", to_json(eq)},
                      {"solution", to_json(Solution{g.solution})}};
    return {0, dump(out), {}};
  } catch (const Error& e) {
    return failure(e.code() == ErrorCode::kInternalConsistency ? 3 : 2, e.what());
  } catch (const std::exception& e) {
    return invalid_input(e);
  }
}

CommandResult cmd_selftest() {
  const std::vector<CriterionResult> results = run_acceptance();
  std::string out;
  bool all = true;
  for (const auto& r : results) {
    out += format(r) + "\n";
    all = all && r.pass;
  }
  std::size_t passed = 0;
  for (const auto& r : results) passed += r.pass ? 1 : 0;
  out += std::to_string(passed) + "/" + std::to_string(results.size()) + " criteria passed\n";
  return {all ? 0 : 1, out, {}};
}

}  // namespace schwarzian::cli
