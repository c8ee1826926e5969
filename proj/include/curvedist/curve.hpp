#pragma once

// Parametrized curves in R^d: exact rational parametrizations, generalized
// helices in normal form, and black-box analytic evaluators with derivative
// jets. Domains are open intervals.

#include "curvedist/exact.hpp"

#include <Eigen/Dense>

#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace curvedist {

using Vec = Eigen::VectorXd;
/// Entry j is the j-th derivative; entry 0 is the point itself.
using Jet = std::vector<Vec>;
using ExactPoint = std::vector<Rational>;
using ExactJet = std::vector<ExactPoint>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Open interval (lo, hi). Finite endpoints always carry an exact value.
class Interval {
public:
    Interval() : Interval(-kInf, kInf) {}
    /// Endpoints may be infinite; finite doubles are taken exactly.
    Interval(double lo, double hi);
    Interval(std::optional<Rational> lo, std::optional<Rational> hi);

    double lo() const { return lo_; }
    double hi() const { return hi_; }
    const std::optional<Rational> &lo_exact() const { return lo_exact_; }
    const std::optional<Rational> &hi_exact() const { return hi_exact_; }
    bool is_finite() const { return lo_exact_.has_value() && hi_exact_.has_value(); }
    bool contains(double t) const { return t > lo_ && t < hi_; }
    bool contains(const Rational &t) const;
    /// Intersection with [-half_width, half_width] shifted to stay inside; used
    /// when a finite working window is needed on an unbounded domain.
    Interval clipped(double half_width) const;

private:
    double lo_, hi_;
    std::optional<Rational> lo_exact_, hi_exact_;
};

struct RationalCurve {
    std::vector<RationalFunction> coords;
    Interval domain;
    /// max over coordinates of max(deg num, deg den).
    int degree = 0;
    /// Double copies of num/den coefficients for the floating path.
    std::vector<std::pair<std::vector<double>, std::vector<double>>> float_coeffs;
};

/// (a_1 cos l_1 t, a_1 sin l_1 t, ..., a_k cos l_k t, a_k sin l_k t, t w, 0...).
struct HelixCurve {
    std::vector<double> radii;
    std::vector<double> frequencies;
    std::vector<double> drift;
    int dimension = 0;
    Interval domain;
};

struct AnalyticCurve {
    int dimension = 0;
    /// Highest jet order the evaluator supports.
    int max_order = 0;
    std::function<Jet(double t, int order)> evaluator;
    Interval domain;
};

/// A curve plus a label; values are immutable and cheap to copy.
class Curve {
public:
    using Repr = std::variant<RationalCurve, HelixCurve, AnalyticCurve>;

    Curve(Repr repr, std::string label);

    const Repr &repr() const { return repr_; }
    const std::string &label() const { return label_; }
    int dimension() const;
    const Interval &domain() const;
    /// Jet orders available; effectively unbounded for closed forms.
    int max_jet_order() const;

    bool is_rational() const { return std::holds_alternative<RationalCurve>(repr_); }
    bool is_helix() const { return std::holds_alternative<HelixCurve>(repr_); }
    const RationalCurve &rational() const { return std::get<RationalCurve>(repr_); }
    const HelixCurve &helix() const { return std::get<HelixCurve>(repr_); }

    /// Same parametrization on a sub-interval of the domain.
    Curve restricted(const Interval &sub) const;

private:
    Repr repr_;
    std::string label_;
};

/// Validates reducedness and that no denominator vanishes inside the domain.
RationalCurve make_rational_curve(std::vector<RationalFunction> coords, Interval domain);
HelixCurve make_helix_curve(std::vector<double> radii, std::vector<double> frequencies, std::vector<double> drift,
                            int dimension, Interval domain);

/// Builtins: line, parabola, cubic, rect_hyperbola, rational_circle,
/// unit_circle, circular_helix(c), ellipse(a,b), flat_torus(p,q).
Curve builtin_curve(const std::string &name);

Vec evaluate(const Curve &curve, double t);
ExactPoint evaluate_exact(const Curve &curve, const Rational &t);

Jet derivative_jet(const Curve &curve, double t, int order);
/// Exact jet by the quotient rule on Taylor coefficients of num and den.
ExactJet derivative_jet_exact(const Curve &curve, const Rational &t, int order);
/// Same jet by repeated symbolic differentiation and Horner evaluation.
ExactJet derivative_jet_symbolic(const Curve &curve, const Rational &t, int order);

/// Unit-speed reparametrization on (0, L). Requires a finite domain.
Curve arc_length_reparametrize(const Curve &curve, int grid_size = 256);
/// Total length of the curve over its (finite) domain.
double curve_length(const Curve &curve, int grid_size = 256);

namespace detail {
/// Jet without the domain check; endpoints of the closure are allowed.
Jet jet_unchecked(const Curve &curve, double t, int order);
} // namespace detail

} // namespace curvedist
