#pragma once

// Elekes curves xi_pq(t) = (D(gamma(t), p), D(gamma(t), q)), their implicit
// equations, pairwise intersections and incidence bookkeeping.

#include "curvedist/counting.hpp"
#include "curvedist/curve.hpp"
#include "curvedist/implicit.hpp"
#include "curvedist/quantity.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace curvedist {

using Point2 = std::array<double, 2>;

struct ElekesCurve {
    Curve base;
    Quantity quantity;
    double p_param = 0.0;
    double q_param = 0.0;
    std::optional<Rational> p_exact, q_exact;
    Vec p_point, q_point;
    /// Both components as rational functions of t (rational base, exact p and q).
    std::optional<std::array<RationalFunction, 2>> components;
    /// Filled by with_implicit().
    std::optional<BiPoly> implicit;

    bool is_rational() const { return components.has_value(); }
    /// deg D * deg gamma when the base is rational, otherwise 0.
    int degree_bound() const;
};

ElekesCurve make_elekes_curve(const Curve &base, const Quantity &quantity, double p, double q);
ElekesCurve make_elekes_curve(const Curve &base, const Quantity &quantity, const Rational &p, const Rational &q);
/// Copy with the square-free implicit polynomial attached (rational case only).
ElekesCurve with_implicit(ElekesCurve e);

Point2 eval_elekes(const ElekesCurve &e, double t);
/// Exact value through the cached rational components.
std::array<Rational, 2> eval_elekes_exact(const ElekesCurve &e, const Rational &t);
/// Exact value by direct evaluation of D on the base curve.
std::array<Rational, 2> eval_elekes_direct(const ElekesCurve &e, const Rational &t);
/// d/dt xi_pq(t).
Point2 eval_elekes_velocity(const ElekesCurve &e, double t);

struct IntersectionOptions {
    int grid = 64;
    double tol = 1e-9;
    /// Parameter window for the search; defaults to the base domain clipped to [-4, 4].
    std::optional<Interval> window;
};

struct IntersectionReport {
    std::vector<Point2> points;
    bool same_algebraic_curve = false;
    /// True when same-curve detection used exact implicit equality.
    bool exact_same_check = false;
    /// Grid cells whose Newton iteration did not converge.
    int unrefined_cells = 0;
};

/// Newton from every cell of a grid x grid seed lattice over the window;
/// converged roots within max(tol, 1e-5) relative distance of an earlier root are merged.
IntersectionReport intersect_elekes_pair(const ElekesCurve &a, const ElekesCurve &b, const IntersectionOptions &opts = {});

/// Floating same-curve test: 2B+1 samples of each curve lie on the other within tol.
bool fingerprint_same_curve(const ElekesCurve &a, const ElekesCurve &b, const Interval &window, double tol = 1e-9);

struct IncidenceFailure {
    std::size_t p, q, r;
    std::string detail;
};

struct IncidenceReport {
    std::size_t checked = 0;
    std::vector<IncidenceFailure> failures;
    bool exact = false;
    /// Distinct product points (D(r,p), D(r,q)) per Elekes curve.
    std::size_t min_incidences = 0;
    std::size_t max_incidences = 0;
};

IncidenceReport verify_incidence_invariant(const ParamPointSet &pset, const Quantity &q);

struct AdmissibilityOptions {
    int sample_pairs = 50;
    int grid = 64;
    double tol = 1e-9;
    std::uint64_t seed = 0;
    std::optional<Interval> window;
};

struct AdmissibilityReport {
    std::size_t curves = 0;
    std::size_t pairs_checked = 0;
    std::size_t same_curve_pairs = 0;
    int max_pairwise_intersections = 0;
    /// Sizes of the classes of Elekes curves sharing one algebraic curve.
    std::vector<std::size_t> duplicate_curve_classes;
    /// intersection count -> number of sampled pairs.
    std::map<int, std::size_t> histogram;
    bool exact_classes = false;
    int unrefined_cells = 0;
};

AdmissibilityReport admissibility_scan(const ParamPointSet &pset, const Quantity &q, const AdmissibilityOptions &opts = {});

} // namespace curvedist
