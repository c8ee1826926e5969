#pragma once

// Structured point sets on curves, distinct-value counting of a distance
// polynomial over off-diagonal pairs, growth-exponent fits, and the
// incidence-bound implied lower bound.

#include "curvedist/curve.hpp"
#include "curvedist/quantity.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace curvedist {

/// Strictly increasing parameters inside the curve domain. `exact` is
/// present when every parameter is a known rational.
struct ParamPointSet {
    Curve curve;
    std::vector<double> params;
    std::optional<std::vector<Rational>> exact;
    std::string label;

    std::size_t size() const { return params.size(); }
};

ParamPointSet make_point_set(const Curve &curve, std::vector<Rational> params, std::string label = "explicit");
ParamPointSet make_point_set(const Curve &curve, std::vector<double> params, std::string label = "explicit");

struct ArithmeticProgression {
    Rational start, step;
    int count = 0;
};
struct GeometricProgression {
    Rational start, ratio;
    int count = 0;
};
/// Rationals with denominator 2^32, uniform over the domain clipped to [-1, 1]
/// (or a unit window at a finite endpoint).
struct UniformRandom {
    std::uint64_t seed = 0;
    int count = 0;
};
/// 2*pi*i/N around a circle, centred in the domain.
struct EquallySpacedAngle {
    int count = 0;
};
using Scheme = std::variant<ArithmeticProgression, GeometricProgression, UniformRandom, EquallySpacedAngle>;

/// "arith:start:step:N", "geom:start:ratio:N", "random:seed:N", "angle:N".
Scheme parse_scheme(const std::string &text);
std::string describe_scheme(const Scheme &scheme);
int scheme_size(const Scheme &scheme);
Scheme with_size(const Scheme &scheme, int count);

ParamPointSet generate_point_set(const Curve &curve, const Scheme &scheme);

struct ExactMode {};
struct ToleranceMode {
    double rel_eps = 1e-9;
};
using CountMode = std::variant<ExactMode, ToleranceMode>;

struct DistinctCount {
    std::size_t count = 0;
    std::size_t pairs = 0;
    double min_value = 0.0;
    double max_value = 0.0;
    /// Size of the largest class of equal values.
    std::size_t max_multiplicity = 0;
    bool exact = false;
    /// Sorted representatives, one per distinct value.
    std::vector<double> values;
};

/// Counts |{D(p, r) : p != r in P}|; the diagonal value 0 is excluded.
DistinctCount count_distinct_values(const ParamPointSet &pset, const Quantity &q, const CountMode &mode);

struct ExponentFit {
    std::vector<std::pair<double, double>> samples;
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

/// Least-squares slope of log(count) against log(N).
ExponentFit fit_exponent(const std::vector<std::pair<double, double>> &samples);

struct LowerBound {
    double delta = 1.0;
    /// True when already delta = 1 satisfies the incidence inequality.
    bool trivial = false;
};

/// Smallest delta >= 1 with (NP-2) NXi <= K (NXi^(2/3) delta^(4/3) + NXi + delta^2).
LowerBound elekes_lower_bound(long num_points, long num_curves, double admissibility, double incidence_constant);

} // namespace curvedist
