#pragma once

#include <string>
#include <string_view>

#include "json.hpp"

#include "schwarzian/equations.hpp"
#include "schwarzian/solution.hpp"
#include "schwarzian/verification.hpp"
#include "schwarzian/weierstrass.hpp"

namespace schwarzian::cli {

using nlohmann::json;

/// Parses UTF-8 JSON text. Malformed input throws Error(kInvalidArgument)
/// with a "line L, column C" message.
json parse_document(std::string_view text);

// A complex number is [re, im]; a bare JSON number is read as real.
json to_json(Complex z);
Complex complex_from_json(const json& j, const std::string& what);

json to_json(const PolynomialC& p);  // ascending coefficients
PolynomialC polynomial_from_json(const json& j, const std::string& what);

json to_json(const MobiusTransform& m);  // [a, b, c, d]
MobiusTransform mobius_from_json(const json& j);

json to_json(const WeierstrassInvariants& inv);
WeierstrassInvariants invariants_from_json(const json& j);

/// {"p", "numerator", "denominator"} or {"kind", "c", "sigma", "tau"[, "p"]}.
json to_json(const SchwarzianEquation& eq);
SchwarzianEquation equation_from_json(const json& j);

json to_json(const CanonicalForm& form);
json to_json(const NotCanonical& nc);

/// {"family", parameters..., "invariants"}; "outer" only when not the identity.
json to_json(const Solution& s);
Solution solution_from_json(const json& j);

json to_json(const ResidualReport& r);
ResidualReport report_from_json(const json& j);

json to_json(const LatticeData& lattice);

}  // namespace schwarzian::cli
