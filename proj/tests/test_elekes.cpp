#include "curvedist/elekes.hpp"
#include "curvedist/errors.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace curvedist;
using testsupport::random_rational;

TEST_SUITE("elekes") {

TEST_CASE("evaluation on the parabola") {
    const Curve parabola = builtin_curve("parabola");
    const Quantity sq2 = Quantity::squared_euclidean(2);
    const ElekesCurve e = make_elekes_curve(parabola, sq2, Rational(0), Rational(1));
    CHECK(e.is_rational());
    CHECK(e.degree_bound() == 4);
    CHECK(eval_elekes(e, 0.0) == Point2{0, 2});
    CHECK(eval_elekes(e, 1.0) == Point2{2, 0});
    CHECK(eval_elekes(e, 2.0) == Point2{20, 10});
    CHECK(eval_elekes_exact(e, Rational(2)) == std::array<Rational, 2>{20, 10});
    const ElekesCurve f = make_elekes_curve(parabola, sq2, 0.0, 1.0);
    CHECK_FALSE(f.is_rational());
    CHECK(f.degree_bound() == 4);
    CHECK(eval_elekes(f, 2.0) == Point2{20, 10});
    CHECK(make_elekes_curve(builtin_curve("unit_circle"), sq2, 0.0, 1.0).degree_bound() == 0);
}

TEST_CASE("construction errors") {
    const Curve parabola = builtin_curve("parabola");
    CHECK_THROWS_AS(make_elekes_curve(parabola, Quantity::squared_euclidean(2), 1.0, 1.0), ValidationError);
    CHECK_THROWS_AS(make_elekes_curve(parabola, Quantity::squared_euclidean(3), 0.0, 1.0), DimensionMismatch);
    CHECK_THROWS_AS(make_elekes_curve(builtin_curve("rect_hyperbola"), Quantity::squared_euclidean(2), -1.0, 1.0),
                    DomainError);
    const ElekesCurve e = make_elekes_curve(builtin_curve("rect_hyperbola"), Quantity::squared_euclidean(2),
                                            Rational(1), Rational(2));
    CHECK_THROWS_AS(eval_elekes_exact(e, Rational(-1)), DomainError);
}

TEST_CASE("swap symmetry and component consistency") {
    std::mt19937_64 rng(43);
    for (const std::string name : {"parabola", "rational_circle", "cubic"}) {
        const Curve curve = builtin_curve(name);
        const Quantity q = Quantity::squared_euclidean(2);
        const Rational p = random_rational(rng, -2, 2, 7), r = p + random_rational(rng, 1, 2, 5);
        const ElekesCurve pq = make_elekes_curve(curve, q, p, r), qp = make_elekes_curve(curve, q, r, p);
        for (int i = 0; i < 20; ++i) {
            const Rational t = random_rational(rng, -3, 3, 11);
            const auto a = eval_elekes_exact(pq, t), b = eval_elekes_exact(qp, t);
            CHECK(a[0] == b[1]);
            CHECK(a[1] == b[0]);
            CHECK(a == eval_elekes_direct(pq, t));
        }
    }
}

TEST_CASE("first coordinate vanishes only at the base parameter") {
    const Curve curve = builtin_curve("parabola").restricted(Interval(-2.0, 2.0));
    const ElekesCurve e = make_elekes_curve(curve, Quantity::squared_euclidean(2), 0.5, -1.0);
    int near_zero = 0;
    for (int i = 1; i < 4000; ++i) {
        const double t = -1.999 + i * 0.001;
        const double v = eval_elekes(e, t)[0];
        CHECK(v >= 0.0);
        if (v < 1e-5) {
            ++near_zero;
            CHECK(std::abs(t - 0.5) < 0.01);
        }
    }
    CHECK(near_zero >= 1);
}

TEST_CASE("velocity matches finite differences") {
    const ElekesCurve e = make_elekes_curve(builtin_curve("cubic"), Quantity::squared_euclidean(2), 0.2, 1.1);
    const double t = 0.7, h = 1e-5;
    const Point2 v = eval_elekes_velocity(e, t);
    const Point2 a = eval_elekes(e, t + h), b = eval_elekes(e, t - h);
    CHECK(v[0] == doctest::Approx((a[0] - b[0]) / (2 * h)).epsilon(1e-7));
    CHECK(v[1] == doctest::Approx((a[1] - b[1]) / (2 * h)).epsilon(1e-7));
}

TEST_CASE("implicit equation of an Elekes curve") {
    const ElekesCurve e =
        with_implicit(make_elekes_curve(builtin_curve("parabola"), Quantity::squared_euclidean(2), Rational(0), Rational(1)));
    REQUIRE(e.implicit);
    CHECK(e.implicit->total_degree() <= e.degree_bound());
    std::mt19937_64 rng(47);
    for (int i = 0; i < 20; ++i) {
        const auto xy = eval_elekes_exact(e, random_rational(rng, -5, 5, 17));
        CHECK(e.implicit->eval(xy[0], xy[1]) == 0);
    }
    const ElekesCurve f = make_elekes_curve(builtin_curve("parabola"), Quantity::squared_euclidean(2), 0.0, 1.0);
    CHECK_THROWS_AS(with_implicit(f), ExactnessUnavailable);
}

TEST_CASE("intersections of swapped parabola curves") {
    const Curve parabola = builtin_curve("parabola");
    const Quantity q = Quantity::squared_euclidean(2);
    const ElekesCurve a = make_elekes_curve(parabola, q, Rational(0), Rational(1));
    const ElekesCurve b = make_elekes_curve(parabola, q, Rational(1), Rational(0));
    const IntersectionReport r = intersect_elekes_pair(a, b);
    CHECK_FALSE(r.same_algebraic_curve);
    CHECK(r.exact_same_check);
    CHECK(r.points.size() >= 1);
    CHECK(r.points.size() <= 16);
    bool on_diagonal = false;
    for (const auto &pt : r.points) on_diagonal = on_diagonal || std::abs(pt[0] - pt[1]) < 1e-8 * std::max(1.0, pt[0]);
    CHECK(on_diagonal);
    // t^2 + t - 1 = 0 makes gamma(t) equidistant from gamma(0) and gamma(1)
    const Point2 mid = eval_elekes(a, (std::sqrt(5.0) - 1) / 2);
    bool found = false;
    for (const auto &pt : r.points) found = found || (std::abs(pt[0] - mid[0]) < 1e-8 && std::abs(pt[1] - mid[1]) < 1e-8);
    CHECK(found);
}

TEST_CASE("generic parabola pairs meet in at most sixteen points") {
    const Curve parabola = builtin_curve("parabola");
    const Quantity q = Quantity::squared_euclidean(2);
    const std::vector<Rational> pts{Rational(1, 7), Rational(2, 5), Rational(5, 6), Rational(13, 10)};
    const ElekesCurve a = make_elekes_curve(parabola, q, pts[0], pts[1]);
    const ElekesCurve b = make_elekes_curve(parabola, q, pts[2], pts[3]);
    const IntersectionReport r = intersect_elekes_pair(a, b);
    CHECK_FALSE(r.same_algebraic_curve);
    CHECK(r.points.size() <= 16);
    for (const auto &pt : r.points) CHECK(std::isfinite(pt[0]));
}

TEST_CASE("swapped circle curves are the same algebraic curve") {
    const Curve circle = builtin_curve("rational_circle");
    const Quantity q = Quantity::squared_euclidean(2);
    const ElekesCurve a = make_elekes_curve(circle, q, Rational(0), Rational(1));
    const ElekesCurve b = make_elekes_curve(circle, q, Rational(1), Rational(0));
    const IntersectionReport r = intersect_elekes_pair(a, b);
    CHECK(r.same_algebraic_curve);
    CHECK(r.exact_same_check);
    CHECK(with_implicit(a).implicit == with_implicit(b).implicit);

    const Curve unit = builtin_curve("unit_circle");
    const ElekesCurve fa = make_elekes_curve(unit, q, -1.0, 1.0), fb = make_elekes_curve(unit, q, 1.0, -1.0);
    CHECK(fingerprint_same_curve(fa, fb, unit.domain()));
    const IntersectionReport fr = intersect_elekes_pair(fa, fb);
    CHECK(fr.same_algebraic_curve);
    CHECK_FALSE(fr.exact_same_check);

    const Curve parabola = builtin_curve("parabola");
    const ElekesCurve pa = make_elekes_curve(parabola, q, 0.0, 1.0), pb = make_elekes_curve(parabola, q, 1.0, 0.0);
    CHECK_FALSE(fingerprint_same_curve(pa, pb, Interval(-4.0, 4.0)));
}

TEST_CASE("incidence invariant") {
    const Quantity sq2 = Quantity::squared_euclidean(2);
    const auto parabola = make_point_set(builtin_curve("parabola"),
                                         std::vector<Rational>{Rational(-3, 2), 0, Rational(1, 3), 1, Rational(7, 4)});
    const IncidenceReport r = verify_incidence_invariant(parabola, sq2);
    CHECK(r.checked == 60);
    CHECK(r.failures.empty());
    CHECK(r.exact);
    CHECK(r.min_incidences == 3);
    CHECK(r.max_incidences == 3);

    const auto hyp = generate_point_set(builtin_curve("rect_hyperbola"), GeometricProgression{1, 2, 4});
    const IncidenceReport h = verify_incidence_invariant(hyp, Quantity::pinned_area(0, 0));
    CHECK(h.failures.empty());
    CHECK(h.checked == 24);

    const auto circle = make_point_set(builtin_curve("unit_circle"), std::vector<double>{-1.0, 0.5, 2.0});
    const IncidenceReport c = verify_incidence_invariant(circle, sq2);
    CHECK_FALSE(c.exact);
    CHECK(c.failures.empty());
    CHECK(c.min_incidences == 1);
    CHECK(c.max_incidences == 1);

    const auto tiny = make_point_set(builtin_curve("parabola"), std::vector<double>{0.0, 1.0});
    CHECK_THROWS_AS(verify_incidence_invariant(tiny, sq2), ValidationError);
}

TEST_CASE("admissibility scans") {
    const Quantity sq2 = Quantity::squared_euclidean(2);
    const auto parabola = generate_point_set(builtin_curve("parabola"), ArithmeticProgression{Rational(1, 3), Rational(2, 7), 12});
    AdmissibilityOptions none;
    none.sample_pairs = 0;
    const AdmissibilityReport empty = admissibility_scan(parabola, sq2, none);
    CHECK(empty.pairs_checked == 0);
    CHECK(empty.curves == 0);
    CHECK(empty.histogram.empty());

    AdmissibilityOptions opts;
    opts.sample_pairs = 20;
    opts.grid = 32;
    opts.seed = 5;
    const AdmissibilityReport r = admissibility_scan(parabola, sq2, opts);
    CHECK(r.curves == 132);
    CHECK(r.pairs_checked == 20);
    CHECK(r.exact_classes);
    CHECK(r.same_curve_pairs == 0);
    CHECK(r.max_pairwise_intersections <= 16);
    REQUIRE(r.duplicate_curve_classes.size() == 132);
    for (auto s : r.duplicate_curve_classes) CHECK(s == 1);
    std::size_t total = 0;
    for (const auto &[count, pairs] : r.histogram) total += pairs;
    CHECK(total == 20);

    const auto circle = generate_point_set(builtin_curve("unit_circle"), EquallySpacedAngle{12});
    AdmissibilityOptions copts;
    copts.sample_pairs = 4;
    copts.grid = 16;
    const AdmissibilityReport c = admissibility_scan(circle, sq2, copts);
    CHECK_FALSE(c.exact_classes);
    REQUIRE_FALSE(c.duplicate_curve_classes.empty());
    CHECK(c.duplicate_curve_classes.front() > 1);
}

}
