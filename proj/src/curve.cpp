#include "curvedist/curve.hpp"

#include "curvedist/errors.hpp"
#include "curvedist/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <regex>
#include <sstream>

namespace curvedist {

namespace {

constexpr int kClosedFormMaxOrder = 16;

double factorial(int k) {
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

// Coefficients c_0..c_K of p(t + h) by repeated synthetic division.
template <typename T>
std::vector<T> shifted_taylor(const std::vector<T> &coeffs, const T &t, int order) {
    std::vector<T> out;
    out.reserve(static_cast<std::size_t>(order + 1));
    std::vector<T> b = coeffs;
    for (int k = 0; k <= order; ++k) {
        if (b.empty()) {
            out.push_back(T(0));
            continue;
        }
        std::vector<T> q(b.size() - 1);
        T acc = b.back();
        for (std::size_t i = b.size() - 1; i-- > 0;) {
            q[i] = acc;
            acc = acc * t + b[i];
        }
        out.push_back(acc);
        b = std::move(q);
    }
    return out;
}

// Taylor coefficients of num/den at t from those of num and den.
template <typename T>
std::vector<T> quotient_taylor(const std::vector<T> &num, const std::vector<T> &den) {
    if (den[0] == 0) throw PoleError("denominator vanishes at the evaluation point");
    std::vector<T> q(num.size());
    for (std::size_t k = 0; k < num.size(); ++k) {
        T acc = num[k];
        for (std::size_t j = 0; j < k; ++j) acc -= q[j] * den[k - j];
        q[k] = acc / den[0];
    }
    return q;
}

Jet rational_jet(const RationalCurve &c, double t, int order) {
    Jet jet(static_cast<std::size_t>(order + 1), Vec::Zero(static_cast<Eigen::Index>(c.coords.size())));
    for (std::size_t i = 0; i < c.coords.size(); ++i) {
        const auto &[num, den] = c.float_coeffs[i];
        auto q = quotient_taylor(shifted_taylor(num, t, order), shifted_taylor(den, t, order));
        for (int k = 0; k <= order; ++k)
            jet[static_cast<std::size_t>(k)][static_cast<Eigen::Index>(i)] = q[static_cast<std::size_t>(k)] * factorial(k);
    }
    return jet;
}

Jet helix_jet(const HelixCurve &h, double t, int order) {
    Jet jet(static_cast<std::size_t>(order + 1), Vec::Zero(h.dimension));
    const double quarter = std::numbers::pi / 2.0;
    for (std::size_t i = 0; i < h.radii.size(); ++i) {
        const double a = h.radii[i];
        const double lam = h.frequencies[i];
        double scale = a;
        for (int k = 0; k <= order; ++k) {
            const double phase = lam * t + k * quarter;
            jet[static_cast<std::size_t>(k)][static_cast<Eigen::Index>(2 * i)] = scale * std::cos(phase);
            jet[static_cast<std::size_t>(k)][static_cast<Eigen::Index>(2 * i + 1)] = scale * std::sin(phase);
            scale *= lam;
        }
    }
    const auto offset = static_cast<Eigen::Index>(2 * h.radii.size());
    for (std::size_t j = 0; j < h.drift.size(); ++j) {
        jet[0][offset + static_cast<Eigen::Index>(j)] = t * h.drift[j];
        if (order >= 1) jet[1][offset + static_cast<Eigen::Index>(j)] = h.drift[j];
    }
    return jet;
}

void require_order(const Curve &curve, int order) {
    if (order < 0) throw JetOrderError("negative jet order");
    if (order > curve.max_jet_order())
        throw JetOrderError("curve '" + curve.label() + "' supports jets up to order " +
                            std::to_string(curve.max_jet_order()) + ", requested " + std::to_string(order));
}

void require_domain(const Curve &curve, double t) {
    if (!curve.domain().contains(t))
        throw DomainError("parameter " + std::to_string(t) + " outside the open domain of '" + curve.label() + "'");
}

void require_domain(const Curve &curve, const Rational &t) {
    if (!curve.domain().contains(t))
        throw DomainError("parameter " + format_rational(t) + " outside the open domain of '" + curve.label() + "'");
}

} // namespace

// ---------------------------------------------------------------------------
// Interval

Interval::Interval(double lo, double hi) : lo_(lo), hi_(hi) {
    if (std::isnan(lo) || std::isnan(hi) || !(lo < hi)) throw ValidationError("domain interval needs lo < hi");
    if (std::isfinite(lo)) lo_exact_ = from_double(lo);
    if (std::isfinite(hi)) hi_exact_ = from_double(hi);
}

Interval::Interval(std::optional<Rational> lo, std::optional<Rational> hi)
    : lo_(lo ? to_double(*lo) : -kInf), hi_(hi ? to_double(*hi) : kInf), lo_exact_(std::move(lo)),
      hi_exact_(std::move(hi)) {
    if (lo_exact_ && hi_exact_ && !(*lo_exact_ < *hi_exact_)) throw ValidationError("domain interval needs lo < hi");
}

bool Interval::contains(const Rational &t) const {
    if (lo_exact_ && !(t > *lo_exact_)) return false;
    if (hi_exact_ && !(t < *hi_exact_)) return false;
    return true;
}

Interval Interval::clipped(double half_width) const {
    if (is_finite()) return *this;
    if (!lo_exact_ && !hi_exact_) return {-half_width, half_width};
    if (lo_exact_) return {lo_, lo_ + 2.0 * half_width};
    return {hi_ - 2.0 * half_width, hi_};
}

// ---------------------------------------------------------------------------
// Curve

Curve::Curve(Repr repr, std::string label) : repr_(std::move(repr)), label_(std::move(label)) {}

int Curve::dimension() const {
    return std::visit(
        [](const auto &c) -> int {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, RationalCurve>)
                return static_cast<int>(c.coords.size());
            else
                return c.dimension;
        },
        repr_);
}

const Interval &Curve::domain() const {
    return std::visit([](const auto &c) -> const Interval & { return c.domain; }, repr_);
}

int Curve::max_jet_order() const {
    if (const auto *a = std::get_if<AnalyticCurve>(&repr_)) return a->max_order;
    return kClosedFormMaxOrder;
}

Curve Curve::restricted(const Interval &sub) const {
    const Interval &dom = domain();
    if (sub.lo() < dom.lo() || sub.hi() > dom.hi())
        throw DomainError("restriction interval is not inside the domain of '" + label_ + "'");
    Repr copy = repr_;
    std::visit([&](auto &c) { c.domain = sub; }, copy);
    return {std::move(copy), label_};
}

RationalCurve make_rational_curve(std::vector<RationalFunction> coords, Interval domain) {
    if (coords.empty()) throw ValidationError("rational curve needs at least one coordinate");
    RationalCurve c;
    c.domain = std::move(domain);
    bool all_constant = true;
    for (const auto &f : coords) {
        if (count_real_roots(f.den(), c.domain.lo_exact(), c.domain.hi_exact()) != 0)
            throw ValidationError("a coordinate denominator has a root inside the domain");
        c.degree = std::max(c.degree, f.degree());
        all_constant = all_constant && f.is_constant();
        std::vector<double> num, den;
        for (const auto &v : f.num().coeffs()) num.push_back(to_double(v));
        for (const auto &v : f.den().coeffs()) den.push_back(to_double(v));
        c.float_coeffs.emplace_back(std::move(num), std::move(den));
    }
    if (all_constant) throw ValidationError("rational curve has only constant coordinates");
    c.coords = std::move(coords);
    return c;
}

HelixCurve make_helix_curve(std::vector<double> radii, std::vector<double> frequencies, std::vector<double> drift,
                            int dimension, Interval domain) {
    if (radii.size() != frequencies.size()) throw ValidationError("helix radii and frequencies differ in length");
    if (radii.empty() && drift.empty()) throw ValidationError("helix needs k > 0 or l > 0");
    if (static_cast<int>(2 * radii.size() + drift.size()) > dimension || dimension < 2)
        throw ValidationError("helix ambient dimension must be at least max(2, 2k + l)");
    for (double a : radii)
        if (!(a > 0.0)) throw ValidationError("helix radii must be positive");
    for (double l : frequencies)
        if (l == 0.0 || !std::isfinite(l)) throw ValidationError("helix frequencies must be nonzero");
    return {std::move(radii), std::move(frequencies), std::move(drift), dimension, std::move(domain)};
}

Curve builtin_curve(const std::string &name) {
    static const std::regex pattern(R"(\s*([a-z_]+)\s*(?:\((.*)\))?\s*)");
    std::smatch m;
    if (!std::regex_match(name, m, pattern)) throw ValidationError("unknown builtin curve '" + name + "'");
    const std::string base = m[1];
    std::vector<Rational> args;
    if (m[2].matched) {
        std::stringstream ss(m[2].str());
        std::string item;
        while (std::getline(ss, item, ',')) args.push_back(parse_rational(item));
    }
    auto want_args = [&](std::size_t n) {
        if (args.size() != n)
            throw ValidationError("builtin '" + base + "' takes " + std::to_string(n) + " argument(s)");
    };
    auto poly = [](std::initializer_list<long> c) {
        std::vector<Rational> v;
        for (long x : c) v.emplace_back(x);
        return Poly(std::move(v));
    };
    auto rf = [&](std::initializer_list<long> num, std::initializer_list<long> den = {1}) {
        return RationalFunction(poly(num), poly(den));
    };
    const Interval line_domain{-kInf, kInf};

    if (base == "line") {
        want_args(0);
        return {make_rational_curve({rf({0, 1}), rf({0})}, line_domain), name};
    }
    if (base == "parabola") {
        want_args(0);
        return {make_rational_curve({rf({0, 1}), rf({0, 0, 1})}, line_domain), name};
    }
    if (base == "cubic") {
        want_args(0);
        return {make_rational_curve({rf({0, 1}), rf({0, 0, 0, 1})}, line_domain), name};
    }
    if (base == "rect_hyperbola") {
        want_args(0);
        return {make_rational_curve({rf({0, 1}), rf({1}, {0, 1})}, Interval(0.0, kInf)), name};
    }
    if (base == "rational_circle") {
        want_args(0);
        return {make_rational_curve({rf({1, 0, -1}, {1, 0, 1}), rf({0, 2}, {1, 0, 1})}, line_domain), name};
    }
    if (base == "unit_circle") {
        want_args(0);
        return {make_helix_curve({1.0}, {1.0}, {}, 2, Interval(-std::numbers::pi, std::numbers::pi)), name};
    }
    if (base == "circular_helix") {
        want_args(1);
        return {make_helix_curve({1.0}, {1.0}, {to_double(args[0])}, 3, line_domain), name};
    }
    if (base == "flat_torus") {
        want_args(2);
        return {make_helix_curve({1.0, 1.0}, {to_double(args[0]), to_double(args[1])}, {}, 4, line_domain), name};
    }
    if (base == "ellipse") {
        want_args(2);
        const double a = to_double(args[0]);
        const double b = to_double(args[1]);
        if (!(a > 0.0 && b > 0.0)) throw ValidationError("ellipse semi-axes must be positive");
        AnalyticCurve c;
        c.dimension = 2;
        c.max_order = kClosedFormMaxOrder;
        c.domain = Interval(-std::numbers::pi, std::numbers::pi);
        c.evaluator = [a, b](double t, int order) {
            Jet jet;
            for (int k = 0; k <= order; ++k) {
                const double phase = t + k * std::numbers::pi / 2.0;
                Vec v(2);
                v << a * std::cos(phase), b * std::sin(phase);
                jet.push_back(std::move(v));
            }
            return jet;
        };
        return {std::move(c), name};
    }
    throw ValidationError("unknown builtin curve '" + name + "'");
}

// ---------------------------------------------------------------------------
// Evaluation

namespace detail {

Jet jet_unchecked(const Curve &curve, double t, int order) {
    require_order(curve, order);
    return std::visit(
        [&](const auto &c) -> Jet {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, RationalCurve>) {
                return rational_jet(c, t, order);
            } else if constexpr (std::is_same_v<T, HelixCurve>) {
                return helix_jet(c, t, order);
            } else {
                Jet jet = c.evaluator(t, order);
                if (static_cast<int>(jet.size()) < order + 1)
                    throw JetOrderError("analytic evaluator returned a short jet");
                jet.resize(static_cast<std::size_t>(order + 1));
                return jet;
            }
        },
        curve.repr());
}

} // namespace detail

Vec evaluate(const Curve &curve, double t) {
    require_domain(curve, t);
    return detail::jet_unchecked(curve, t, 0)[0];
}

ExactPoint evaluate_exact(const Curve &curve, const Rational &t) {
    if (!curve.is_rational()) throw ExactnessUnavailable("exact evaluation needs a rational curve");
    require_domain(curve, t);
    ExactPoint p;
    for (const auto &f : curve.rational().coords) p.push_back(f.eval(t));
    return p;
}

Jet derivative_jet(const Curve &curve, double t, int order) {
    require_domain(curve, t);
    return detail::jet_unchecked(curve, t, order);
}

ExactJet derivative_jet_exact(const Curve &curve, const Rational &t, int order) {
    if (!curve.is_rational()) throw ExactnessUnavailable("exact jets need a rational curve");
    require_domain(curve, t);
    require_order(curve, order);
    const auto &coords = curve.rational().coords;
    ExactJet jet(static_cast<std::size_t>(order + 1), ExactPoint(coords.size()));
    for (std::size_t i = 0; i < coords.size(); ++i) {
        auto q = quotient_taylor(shifted_taylor(coords[i].num().coeffs(), t, order),
                                 shifted_taylor(coords[i].den().coeffs(), t, order));
        Rational fact = 1;
        for (int k = 0; k <= order; ++k) {
            if (k > 0) fact *= k;
            jet[static_cast<std::size_t>(k)][i] = q[static_cast<std::size_t>(k)] * fact;
        }
    }
    return jet;
}

ExactJet derivative_jet_symbolic(const Curve &curve, const Rational &t, int order) {
    if (!curve.is_rational()) throw ExactnessUnavailable("exact jets need a rational curve");
    require_domain(curve, t);
    require_order(curve, order);
    const auto &coords = curve.rational().coords;
    ExactJet jet(static_cast<std::size_t>(order + 1), ExactPoint(coords.size()));
    for (std::size_t i = 0; i < coords.size(); ++i) {
        RationalFunction f = coords[i];
        for (int k = 0; k <= order; ++k) {
            jet[static_cast<std::size_t>(k)][i] = f.eval(t);
            if (k < order) f = f.derivative();
        }
    }
    return jet;
}

// ---------------------------------------------------------------------------
// Arc length

namespace {

class ArcLengthMap {
public:
    ArcLengthMap(Curve base, int grid_size) : base_(std::move(base)) {
        const Interval &dom = base_.domain();
        if (!dom.is_finite()) throw DomainError("arc-length reparametrization needs a finite domain");
        if (grid_size < 16) throw ValidationError("arc-length grid needs at least 16 points");
        const auto n = static_cast<std::size_t>(grid_size);
        nodes_.resize(n);
        for (std::size_t i = 0; i < n; ++i)
            nodes_[i] = dom.lo() + (dom.hi() - dom.lo()) * static_cast<double>(i) / static_cast<double>(n - 1);
        nodes_.back() = dom.hi();
        for (std::size_t i = 1; i + 1 < n; ++i) {
            if (speed(nodes_[i]) < 1e-12)
                throw SingularParametrization("speed vanishes near t = " + std::to_string(nodes_[i]));
        }
        cumulative_.assign(n, 0.0);
        auto f = [this](double t) { return speed(t); };
        for (std::size_t i = 0; i + 1 < n; ++i) {
            double est = numerics::gauss_legendre(f, nodes_[i], nodes_[i + 1]);
            double piece = numerics::adaptive_integrate(f, nodes_[i], nodes_[i + 1], 1e-15 * std::max(1.0, est));
            cumulative_[i + 1] = cumulative_[i] + piece;
        }
    }

    double length() const { return cumulative_.back(); }
    const Curve &base() const { return base_; }

    double speed(double t) const { return detail::jet_unchecked(base_, t, 1)[1].norm(); }

    /// Parameter of the base curve at arc length s.
    double param_at(double s) const {
        auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), s);
        std::size_t seg = it == cumulative_.begin() ? 0 : static_cast<std::size_t>(it - cumulative_.begin()) - 1;
        seg = std::min(seg, nodes_.size() - 2);
        const double a = nodes_[seg], b = nodes_[seg + 1];
        const double sa = cumulative_[seg], sb = cumulative_[seg + 1];
        double t = a + (s - sa) / (sb - sa) * (b - a);
        auto f = [this](double x) { return speed(x); };
        for (int it_count = 0; it_count < 60; ++it_count) {
            double residual = sa + numerics::gauss_legendre(f, a, t, 16) - s;
            double step = residual / speed(t);
            t -= step;
            if (std::abs(residual) <= 4e-16 * std::max(1.0, length())) break;
        }
        return t;
    }

    Jet jet_at(double s, int order) const {
        const double t0 = param_at(s);
        Jet base_jet = detail::jet_unchecked(base_, t0, order);
        if (order == 0) return {base_jet[0]};
        const auto len = static_cast<std::size_t>(order + 1);
        const auto d = base_jet[0].size();
        // Taylor coefficients g_j of the base curve at t0.
        std::vector<Vec> g(len);
        for (std::size_t j = 0; j < len; ++j) g[j] = base_jet[j] / factorial(static_cast<int>(j));
        numerics::series::Series speed_sq(len - 1, 0.0);
        for (std::size_t a = 0; a + 1 < len; ++a)
            for (std::size_t b = 0; a + b + 1 < len; ++b)
                speed_sq[a + b] += static_cast<double>((a + 1) * (b + 1)) * g[a + 1].dot(g[b + 1]);
        auto speed_series = numerics::series::sqrt(speed_sq, len - 1);
        numerics::series::Series arc(len, 0.0);
        for (std::size_t j = 0; j + 1 < len; ++j) arc[j + 1] = speed_series[j] / static_cast<double>(j + 1);
        auto inverse = numerics::series::revert(arc, len);
        Jet out(len, Vec::Zero(d));
        for (Eigen::Index c = 0; c < d; ++c) {
            numerics::series::Series coord(len);
            for (std::size_t j = 0; j < len; ++j) coord[j] = g[j][c];
            auto composed = numerics::series::compose(coord, inverse, len);
            for (std::size_t k = 0; k < len; ++k) out[k][c] = composed[k] * factorial(static_cast<int>(k));
        }
        return out;
    }

private:
    Curve base_;
    std::vector<double> nodes_;
    std::vector<double> cumulative_;
};

} // namespace

Curve arc_length_reparametrize(const Curve &curve, int grid_size) {
    auto map = std::make_shared<const ArcLengthMap>(curve, grid_size);
    AnalyticCurve out;
    out.dimension = curve.dimension();
    out.max_order = std::min(curve.max_jet_order(), 8);
    out.domain = Interval(0.0, map->length());
    out.evaluator = [map](double s, int order) { return map->jet_at(s, order); };
    return {std::move(out), "arclength(" + curve.label() + ")"};
}

double curve_length(const Curve &curve, int grid_size) { return ArcLengthMap(curve, grid_size).length(); }

} // namespace curvedist
