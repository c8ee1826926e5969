#pragma once

// JSON readers and writers for curves, quantities, frameworks and results.

#include "curvedist/counting.hpp"
#include "curvedist/curve.hpp"
#include "curvedist/elekes.hpp"
#include "curvedist/implicit.hpp"
#include "curvedist/motion.hpp"
#include "curvedist/quantity.hpp"
#include "curvedist/rigidity.hpp"
#include "curvedist/simplicity.hpp"

#include "json.hpp"
#include <string>

namespace curvedist::io {

using nlohmann::json;

/// Accepts "p/q" strings, decimal strings, integers and (exactly converted) doubles.
Rational rational_from_json(const json &value);
json rational_to_json(const Rational &value);

/// {"kind": "rational" | "helix" | "builtin", ..., "domain": [lo, hi]}; null bounds are infinite.
Curve curve_from_json(const json &spec);
/// {"kind": "sq_euclidean" | "pinned_area" | "poly", ...}.
Quantity quantity_from_json(const json &spec);
/// {"curve", "quantity", "edges": [[u, w], ...], "embedding": [...]}; the curve
/// may be a builtin name, and string parameters make the embedding exact.
Framework framework_from_json(const json &spec);

/// Reads a spec argument: a JSON file path, inline JSON, or a short form
/// ("parabola", "circular_helix(1/2)" for curves; "sq_euclidean",
/// "pinned_area(x,y)" for quantities).
json load_spec(const std::string &text);
Curve parse_curve_arg(const std::string &text);
Quantity parse_quantity_arg(const std::string &text, int dimension);

json interval_to_json(const Interval &interval);
json to_json(const BiPoly &p);
json to_json(const DistinctCount &c);
json to_json(const ExponentFit &fit);
json to_json(const SimplicityReport &r);
json to_json(const IntersectionReport &r);
json to_json(const IncidenceReport &r);
json to_json(const AdmissibilityReport &r);
json to_json(const FlexibilityResult &r);
json to_json(const DegeneracyReport &r);
json to_json(const MotionTrace &t);
json to_json(const DerivativeNormProfile &p);
json to_json(const HelixClassification &c);

} // namespace curvedist::io
