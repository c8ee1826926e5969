#include "curvedist/errors.hpp"
#include "curvedist/quantity.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace curvedist;
using testsupport::random_rational;
using testsupport::uniform;

namespace {

Vec v2(double a, double b) {
    Vec v(2);
    v << a, b;
    return v;
}

Vec random_vec(std::mt19937_64 &rng, int d) {
    Vec v(d);
    for (int i = 0; i < d; ++i) v[i] = uniform(rng, -2, 2);
    return v;
}

// Richardson-extrapolated central difference of D along coordinate k of (x, y).
double numeric_partial(const Quantity &q, Vec x, Vec y, int k) {
    const int d = static_cast<int>(x.size());
    auto shifted = [&](double h) {
        Vec xp = x, xm = x, yp = y, ym = y;
        if (k < d) {
            xp[k] += h;
            xm[k] -= h;
        } else {
            yp[k - d] += h;
            ym[k - d] -= h;
        }
        return (eval_quantity(q, xp, yp) - eval_quantity(q, xm, ym)) / (2 * h);
    };
    const double h = 1e-3;
    return (4 * shifted(h / 2) - shifted(h)) / 3;
}

} // namespace

TEST_SUITE("quantity") {

TEST_CASE("values") {
    CHECK(eval_quantity(Quantity::squared_euclidean(2), v2(0, 0), v2(3, 4)) == 25.0);
    const Quantity area = Quantity::pinned_area(0, 0);
    CHECK(eval_quantity(area, v2(1, 0), v2(0, 1)) == 1.0);
    CHECK(eval_quantity(area, v2(1, 0), v2(2, 0)) == 0.0);
    // translation by the apex
    const Quantity shifted = Quantity::pinned_area(1, 1);
    CHECK(eval_quantity(shifted, v2(2, 1), v2(1, 2)) == 1.0);
    CHECK(eval_quantity_exact(area, {Rational(1, 2), Rational(0)}, {Rational(0), Rational(3)}) == Rational(9, 4));
}

TEST_CASE("gradients") {
    const Gradient g = grad_quantity(Quantity::squared_euclidean(2), v2(1, 0), v2(0, 0));
    CHECK(g.dx == v2(2, 0));
    CHECK(g.dy == v2(-2, 0));
    const Gradient a = grad_quantity(Quantity::pinned_area(0, 0), v2(1, 0), v2(0, 1));
    CHECK(a.dx == v2(2, 0));
    CHECK(a.dy == v2(0, 2));
    const auto [ex, ey] = grad_quantity_exact(Quantity::pinned_area(0, 0), {Rational(1), Rational(0)},
                                              {Rational(0), Rational(1)});
    CHECK(ex == ExactPoint{Rational(2), Rational(0)});
    CHECK(ey == ExactPoint{Rational(0), Rational(2)});
}

TEST_CASE("dimension mismatch") {
    const Quantity q = Quantity::squared_euclidean(3);
    CHECK_THROWS_AS(eval_quantity(q, v2(0, 0), v2(1, 1)), DimensionMismatch);
    CHECK_THROWS_AS(grad_quantity(Quantity::pinned_area(0, 0), Vec::Zero(3), Vec::Zero(3)), DimensionMismatch);
    CHECK_THROWS_AS(Quantity::polynomial(1, {{{1}, Rational(1)}}), ValidationError);
}

TEST_CASE("general polynomial terms are merged and sorted") {
    // (x - y)^2 written term by term, with a duplicate and a cancelling term
    const Quantity q = Quantity::polynomial(
        1, {{{0, 2}, 1}, {{1, 1}, -1}, {{2, 0}, 1}, {{1, 1}, -1}, {{3, 0}, 2}, {{3, 0}, -2}});
    CHECK(q.terms().size() == 3);
    CHECK(q.degree() == 2);
    Vec x(1), y(1);
    x << 4;
    y << 1;
    CHECK(eval_quantity(q, x, y) == 9.0);
    const Gradient g = grad_quantity(q, x, y);
    CHECK(g.dx[0] == 6.0);
    CHECK(g.dy[0] == -6.0);
    CHECK(Quantity::squared_euclidean(3).degree() == 2);
    CHECK(Quantity::pinned_area(0, 0).degree() == 4);
}

TEST_CASE("built-in quantities are symmetric exactly") {
    std::mt19937_64 rng(29);
    const Quantity sq = Quantity::squared_euclidean(3);
    const Quantity area = Quantity::pinned_area(Rational(1, 3), Rational(-2, 7));
    for (int i = 0; i < 1000; ++i) {
        ExactPoint x, y;
        for (int k = 0; k < 3; ++k) {
            x.push_back(random_rational(rng, -5, 5, 97));
            y.push_back(random_rational(rng, -5, 5, 97));
        }
        CHECK(eval_quantity_exact(sq, x, y) == eval_quantity_exact(sq, y, x));
        const ExactPoint x2(x.begin(), x.begin() + 2), y2(y.begin(), y.begin() + 2);
        CHECK(eval_quantity_exact(area, x2, y2) == eval_quantity_exact(area, y2, x2));
    }
}

TEST_CASE("gradients match finite differences") {
    std::mt19937_64 rng(31);
    const std::vector<Quantity> quantities{
        Quantity::squared_euclidean(3), Quantity::pinned_area(Rational(1, 2), Rational(-1, 3)),
        Quantity::polynomial(2, {{{1, 0, 2, 0}, 3}, {{0, 3, 0, 1}, -1}, {{1, 1, 1, 1}, Rational(1, 2)}})};
    for (const auto &q : quantities) {
        const int d = q.dimension();
        for (int i = 0; i < 100; ++i) {
            const Vec x = random_vec(rng, d), y = random_vec(rng, d);
            const Gradient g = grad_quantity(q, x, y);
            double scale = 1.0;
            for (int k = 0; k < d; ++k) scale = std::max({scale, std::abs(g.dx[k]), std::abs(g.dy[k])});
            for (int k = 0; k < 2 * d; ++k) {
                const double analytic = k < d ? g.dx[k] : g.dy[k - d];
                CHECK(std::abs(analytic - numeric_partial(q, x, y, k)) <= 1e-8 * scale);
            }
        }
    }
}

TEST_CASE("symbolic composition matches pointwise exact evaluation") {
    std::mt19937_64 rng(37);
    auto P = [](std::initializer_list<long> c) {
        std::vector<Rational> v;
        for (long x : c) v.emplace_back(x);
        return Poly(v);
    };
    const std::vector<RationalFunction> x{RationalFunction(P({1, 0, -1}), P({1, 0, 1})),
                                          RationalFunction(P({0, 2}), P({1, 0, 1}))};
    const std::vector<RationalFunction> y{RationalFunction::constant(Rational(3, 5)),
                                          RationalFunction::constant(Rational(4, 5))};
    for (const auto &q : {Quantity::squared_euclidean(2), Quantity::pinned_area(Rational(1, 4), 0)}) {
        const RationalFunction composed = eval_quantity_symbolic(q, x, y);
        for (int i = 0; i < 20; ++i) {
            const Rational t = random_rational(rng, -4, 4, 13);
            const ExactPoint px{x[0].eval(t), x[1].eval(t)}, py{y[0].eval(t), y[1].eval(t)};
            CHECK(composed.eval(t) == eval_quantity_exact(q, px, py));
        }
    }
}

}
