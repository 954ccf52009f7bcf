#pragma once

// JSON views of the library's results. Rationals are "a/b" strings, polynomials are text in the
// given variable names, matrices are arrays of rows.

#include "nilmap/classification.hpp"
#include "nilmap/errors.hpp"
#include "nilmap/tame.hpp"
#include "nilmap/text.hpp"

#include <json.hpp>

namespace nilmap::json_io {

using nlohmann::json;

json to_json(const Rational& r);
json to_json(const RationalMatrix& m);
json to_json(const PolyMatrix& m, const VarNames& names);
json to_json(const PolyMap& map, const VarNames& names);
json to_json(const NilpotencyReport& report, const VarNames& names);
json to_json(const DependenceCertificate& cert);
// a1, a2, c1, c2 in z; h in (t, z).
json to_json(const CanonicalFormA& params);
json to_json(const Conjugation& c, const VarNames& names);
json to_json(const Reduction& r, const VarNames& names);
json to_json(const ReducedForm4D& r);
json to_json(const TameFactorization& f, const VarNames& names);
json to_json(const TheoremViolation& e);

// Inverse of to_json(TameFactorization) for the same variable names.
TameFactorization factorization_from_json(const json& j, const VarNames& names);

}  // namespace nilmap::json_io
