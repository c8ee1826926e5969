#include "curvedist/curve.hpp"
#include "curvedist/errors.hpp"
#include "doctest.h"
#include "support.hpp"

#include <numbers>

using namespace curvedist;
using testsupport::random_rational;
using testsupport::uniform;

namespace {

Poly P(std::initializer_list<long> c) {
    std::vector<Rational> v;
    for (long x : c) v.emplace_back(x);
    return Poly(v);
}

RationalFunction rf(std::initializer_list<long> num, std::initializer_list<long> den = {1}) {
    return RationalFunction(P(num), P(den));
}

Curve rational(std::vector<RationalFunction> coords, Interval domain, std::string label = "test") {
    return Curve(make_rational_curve(std::move(coords), domain), std::move(label));
}

bool near(const Vec &a, std::initializer_list<double> b, double tol) {
    if (a.size() != static_cast<Eigen::Index>(b.size())) return false;
    Eigen::Index i = 0;
    for (double x : b)
        if (std::abs(a[i++] - x) > tol) return false;
    return true;
}

} // namespace

TEST_SUITE("curve") {

TEST_CASE("point evaluation") {
    const Curve parabola = builtin_curve("parabola");
    CHECK(near(evaluate(parabola, 3.0), {3, 9}, 0));
    const auto exact = evaluate_exact(parabola, Rational(3));
    CHECK(exact == ExactPoint{Rational(3), Rational(9)});

    const Curve helix(make_helix_curve({1.0}, {1.0}, {1.0}, 3, Interval()), "helix");
    CHECK(near(evaluate(helix, 0.0), {1, 0, 0}, 0));

    const Curve circle = builtin_curve("rational_circle");
    CHECK(evaluate_exact(circle, Rational(1)) == ExactPoint{Rational(0), Rational(1)});
    CHECK(near(evaluate(circle, 1.0), {0, 1}, 1e-15));
}

TEST_CASE("domain and pole errors") {
    const Curve hyperbola = builtin_curve("rect_hyperbola");
    CHECK_THROWS_AS(evaluate(hyperbola, 0.0), DomainError);
    CHECK_THROWS_AS(evaluate(hyperbola, -1.0), DomainError);
    CHECK_THROWS_AS(evaluate_exact(hyperbola, Rational(0)), DomainError);
    CHECK_THROWS_AS(evaluate(builtin_curve("unit_circle"), std::numbers::pi), DomainError);
    CHECK_THROWS_AS(make_rational_curve({rf({0, 1}), rf({1}, {0, 1})}, Interval()), ValidationError);
    CHECK_THROWS_AS(make_rational_curve({rf({1}, {-2, 0, 1})}, Interval(0.0, 2.0)), ValidationError);
    CHECK_NOTHROW(make_rational_curve({rf({1}, {-2, 0, 1})}, Interval(0.0, 1.0)));
    CHECK_THROWS_AS(builtin_curve("spiral"), ValidationError);
    CHECK_THROWS_AS(builtin_curve("circular_helix"), ValidationError);
    CHECK_THROWS_AS(make_helix_curve({}, {}, {}, 1, Interval()), ValidationError);
}

TEST_CASE("interval semantics") {
    const Interval open(0.0, 1.0);
    CHECK_FALSE(open.contains(0.0));
    CHECK(open.contains(0.5));
    CHECK(open.contains(Rational(1, 2)));
    CHECK_FALSE(open.contains(Rational(1)));
    const Interval clipped = Interval().clipped(4);
    CHECK(clipped.lo() == -4.0);
    CHECK(clipped.hi() == 4.0);
    CHECK(Interval(0.0, kInf).clipped(4).lo() == 0.0);
    CHECK_THROWS_AS(Interval(1.0, 1.0), ValidationError);
}

TEST_CASE("derivative jets") {
    const Jet j = derivative_jet(builtin_curve("parabola"), 1.0, 2);
    REQUIRE(j.size() == 3);
    CHECK(near(j[0], {1, 1}, 0));
    CHECK(near(j[1], {1, 2}, 0));
    CHECK(near(j[2], {0, 2}, 0));

    const Jet c = derivative_jet(builtin_curve("unit_circle"), 0.0, 1);
    CHECK(near(c[0], {1, 0}, 1e-15));
    CHECK(near(c[1], {0, 1}, 1e-15));

    const Curve hyp = builtin_curve("rect_hyperbola");
    const ExactJet e = derivative_jet_exact(hyp, Rational(2), 1);
    CHECK(e[0] == ExactPoint{Rational(2), Rational(1, 2)});
    CHECK(e[1] == ExactPoint{Rational(1), Rational(-1, 4)});
}

TEST_CASE("jet order limit on black-box curves") {
    AnalyticCurve a;
    a.dimension = 1;
    a.max_order = 1;
    a.domain = Interval();
    a.evaluator = [](double t, int order) {
        Jet j{Vec::Constant(1, t)};
        if (order >= 1) j.push_back(Vec::Constant(1, 1.0));
        return j;
    };
    const Curve c(a, "ramp");
    CHECK_NOTHROW(derivative_jet(c, 0.0, 1));
    CHECK_THROWS_AS(derivative_jet(c, 0.0, 2), JetOrderError);
    CHECK_THROWS_AS(derivative_jet_exact(c, Rational(0), 1), ExactnessUnavailable);
}

TEST_CASE("exact jet paths agree on random rational curves") {
    std::mt19937_64 rng(5);
    const std::vector<Curve> curves{builtin_curve("rational_circle"), builtin_curve("cubic"),
                                    rational({rf({1, 2, -1}, {3, 0, 1}), rf({0, 0, 1, 1}, {2, 1, 1})}, Interval(),
                                             "mixed")};
    for (const auto &curve : curves) {
        for (int i = 0; i < 10; ++i) {
            const Rational t = random_rational(rng, -3, 3, 9);
            const ExactJet a = derivative_jet_exact(curve, t, 4);
            const ExactJet b = derivative_jet_symbolic(curve, t, 4);
            CHECK(a == b);
            const Jet f = derivative_jet(curve, t.get_d(), 4);
            for (int k = 0; k <= 4; ++k)
                for (int d = 0; d < curve.dimension(); ++d)
                    CHECK(f[k][d] == doctest::Approx(a[k][d].get_d()).epsilon(1e-10));
        }
    }
}

TEST_CASE("central differences converge at fourth order to the first derivative") {
    const std::vector<Curve> curves{builtin_curve("parabola"), builtin_curve("circular_helix(1/2)"),
                                    builtin_curve("ellipse(2,1)"), builtin_curve("rational_circle")};
    auto richardson = [](const Curve &c, double t, double h) {
        auto cd = [&](double s) { return Vec((evaluate(c, t + s) - evaluate(c, t - s)) / (2 * s)); };
        return Vec((4.0 * cd(h / 2) - cd(h)) / 3.0);
    };
    for (const auto &curve : curves) {
        const double t = 0.7;
        const Vec exact = derivative_jet(curve, t, 1)[1];
        const double e1 = (richardson(curve, t, 0.08) - exact).norm();
        const double e2 = (richardson(curve, t, 0.04) - exact).norm();
        CHECK(e1 < 1e-4);
        if (e2 > 1e-13) CHECK(std::log2(e1 / e2) > 3.5);
    }
}

TEST_CASE("helix distances depend only on the parameter difference") {
    std::mt19937_64 rng(17);
    const Curve helix(make_helix_curve({1.5, 0.5}, {1.0, 2.5}, {0.3, -0.2}, 6, Interval()), "helix2");
    for (int i = 0; i < 100; ++i) {
        const double x = uniform(rng, -5, 5), y = uniform(rng, -5, 5), s = uniform(rng, -5, 5);
        const double d1 = (evaluate(helix, x) - evaluate(helix, y)).norm();
        const double d2 = (evaluate(helix, x + s) - evaluate(helix, y + s)).norm();
        CHECK(std::abs(d1 - d2) <= 1e-12);
    }
}

TEST_CASE("arc length of standard curves") {
    const Curve arc = builtin_curve("unit_circle").restricted(Interval(0.0, std::numbers::pi));
    CHECK(std::abs(curve_length(arc) - std::numbers::pi) < 1e-10);
    const Curve sigma = arc_length_reparametrize(arc);
    CHECK(std::abs(sigma.domain().hi() - std::numbers::pi) < 1e-10);

    const Curve line = builtin_curve("line").restricted(Interval(0.0, 2.0));
    const Curve sline = arc_length_reparametrize(line);
    CHECK(std::abs(sline.domain().hi() - 2.0) < 1e-12);
    for (double s : {0.1, 0.7, 1.3, 1.9}) CHECK(near(evaluate(sline, s), {s, 0}, 1e-10));

    const Curve parabola = builtin_curve("parabola").restricted(Interval(0.0, 1.0));
    const double oracle = testsupport::simpson([](double t) { return std::sqrt(1 + 4 * t * t); }, 0.0, 1.0, 20000);
    const double closed = (2 * std::sqrt(5.0) + std::asinh(2.0)) / 4; // antiderivative check of the oracle
    CHECK(std::abs(oracle - closed) < 1e-12);
    CHECK(std::abs(curve_length(parabola) - oracle) < 1e-8);
}

TEST_CASE("arc-length reparametrization has unit speed off the construction grid") {
    std::mt19937_64 rng(23);
    const std::vector<Curve> curves{builtin_curve("parabola").restricted(Interval(-1.0, 1.5)),
                                    builtin_curve("ellipse(2,1)").restricted(Interval(-1.0, 2.0)),
                                    builtin_curve("circular_helix(1/2)").restricted(Interval(0.0, 3.0)),
                                    builtin_curve("cubic").restricted(Interval(0.2, 1.0))};
    for (const auto &curve : curves) {
        const Curve sigma = arc_length_reparametrize(curve);
        const double L = sigma.domain().hi();
        for (int i = 0; i < 40; ++i) {
            const double s = uniform(rng, 1e-3 * L, L * (1 - 1e-3));
            const Jet j = derivative_jet(sigma, s, 2);
            CHECK(std::abs(j[1].norm() - 1.0) <= 1e-6);
        }
    }
    CHECK_THROWS_AS(arc_length_reparametrize(builtin_curve("parabola")), DomainError);
}

TEST_CASE("arc length rejects singular parametrizations") {
    const Curve cusp = rational({rf({0, 0, 1}), rf({0, 0, 0, 1})}, Interval(-1.0, 1.0), "cusp");
    // 257 nodes on (-1, 1) put one node on the cusp
    CHECK_THROWS_AS(arc_length_reparametrize(cusp, 257), SingularParametrization);
    CHECK_NOTHROW(arc_length_reparametrize(cusp.restricted(Interval(0.5, 1.0))));
}

}
