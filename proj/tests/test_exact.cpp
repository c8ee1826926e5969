#include "curvedist/errors.hpp"
#include "curvedist/exact.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace curvedist;
using testsupport::random_rational;

namespace {

Poly P(std::initializer_list<long> c) {
    std::vector<Rational> v;
    for (long x : c) v.emplace_back(x);
    return Poly(v);
}

BigInt laplace_det(const IntegerMatrix &m) {
    const std::size_t n = m.size();
    if (n == 1) return m[0][0];
    BigInt acc = 0;
    for (std::size_t c = 0; c < n; ++c) {
        IntegerMatrix minor;
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<BigInt> row;
            for (std::size_t k = 0; k < n; ++k)
                if (k != c) row.push_back(m[r][k]);
            minor.push_back(row);
        }
        const BigInt term = m[0][c] * laplace_det(minor);
        acc += (c % 2 == 0) ? term : BigInt(-term);
    }
    return acc;
}

} // namespace

TEST_SUITE("exact") {

TEST_CASE("rational parsing") {
    CHECK(parse_rational("3/6") == Rational(1, 2));
    CHECK(parse_rational("-7") == Rational(-7));
    CHECK(parse_rational("0.3") == Rational(3, 10));
    CHECK(parse_rational("1.5e-3") == Rational(3, 2000));
    CHECK(parse_rational(" 2/-4 ") == Rational(-1, 2));
    CHECK(format_rational(parse_rational("6/4")) == "3/2");
    CHECK_THROWS_AS(parse_rational("abc"), ValidationError);
    CHECK_THROWS_AS(parse_rational("1/0"), ValidationError);
    CHECK_THROWS_AS(parse_rational(""), ValidationError);
}

TEST_CASE("from_double is exact") {
    CHECK(from_double(0.5) == Rational(1, 2));
    CHECK(from_double(-3.0) == Rational(-3));
    CHECK(from_double(0.1).get_d() == 0.1);
    CHECK(from_double(0.1) != Rational(1, 10));
}

TEST_CASE("polynomial arithmetic") {
    const Poly a = P({-1, 1}), b = P({1, 1});
    CHECK(a * b == P({-1, 0, 1}));
    CHECK((a + b) == P({0, 2}));
    CHECK((a - a).is_zero());
    CHECK((a - a).degree() == -1);
    CHECK(P({0, 0, 3}).derivative() == P({0, 6}));
    CHECK(P({1, 2, 3}).eval(Rational(1, 2)) == Rational(11, 4));
    CHECK(P({1, 2, 3}).eval(0.5) == doctest::Approx(2.75));

    Poly q, r;
    Poly::divmod(P({1, 0, 0, 1}), P({1, 1}), q, r);
    CHECK(q == P({1, -1, 1}));
    CHECK(r.is_zero());
    Poly::divmod(P({2, 0, 1}), P({0, 2}), q, r);
    CHECK(q * P({0, 2}) + r == P({2, 0, 1}));
    CHECK(r.degree() < 1);
}

TEST_CASE("polynomial gcd is monic") {
    const Poly f = P({-1, 1}) * P({-1, 1}) * P({2, 1});
    const Poly g = P({-1, 1}) * P({3, 1});
    CHECK(Poly::gcd(f, g) == P({-1, 1}));
    CHECK(Poly::gcd(Rational(4) * f, Rational(-2) * f) == f.monic());
    CHECK(Poly::gcd(Poly(), Poly()).is_zero());
    CHECK(Poly::gcd(P({1, 1}), P({2, 1})) == P({1}));
}

TEST_CASE("sturm root counting") {
    const Poly x2m2 = P({-2, 0, 1});
    CHECK(count_real_roots(x2m2, Rational(0), Rational(2)) == 1);
    CHECK(count_real_roots(x2m2, std::nullopt, std::nullopt) == 2);
    CHECK(count_real_roots(P({1, 0, 1}), std::nullopt, std::nullopt) == 0);
    const Poly repeated = P({-1, 1}) * P({-1, 1}) * P({-3, 1});
    CHECK(count_real_roots(repeated, Rational(0), Rational(4)) == 2);
    // endpoints are excluded
    CHECK(count_real_roots(P({0, -1, 1}), Rational(0), Rational(1)) == 0);
    CHECK(count_real_roots(P({0, -1, 1}), Rational(-1), Rational(2)) == 2);
    CHECK(count_real_roots(P({5}), std::nullopt, std::nullopt) == 0);
}

TEST_CASE("sturm count matches roots of products of linear factors") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<Rational> roots;
        Poly p = P({1});
        const int n = 1 + trial % 5;
        for (int i = 0; i < n; ++i) {
            roots.push_back(random_rational(rng, -3, 3, 7));
            p = p * Poly({-roots.back(), Rational(1)});
        }
        p = p * P({1, 0, 1}); // no real roots
        const Rational lo = random_rational(rng, -3, 0, 5), hi = random_rational(rng, 0, 3, 5);
        std::vector<Rational> inside;
        for (const auto &r : roots)
            if (r > lo && r < hi && std::find(inside.begin(), inside.end(), r) == inside.end()) inside.push_back(r);
        CHECK(count_real_roots(p, lo, hi) == static_cast<int>(inside.size()));
    }
}

TEST_CASE("rational function normal form") {
    const RationalFunction f(P({-1, 0, 1}), P({-1, 1}));
    CHECK(f.num() == P({1, 1}));
    CHECK(f.den() == P({1}));
    const RationalFunction g(P({2}), P({0, 2}));
    CHECK(g.num() == P({1}));
    CHECK(g.den() == P({0, 1}));
    CHECK(g.degree() == 1);
    CHECK(g.derivative() == RationalFunction(P({-1}), P({0, 0, 1})));
    CHECK(g.eval(Rational(4)) == Rational(1, 4));
    CHECK_THROWS_AS(g.eval(Rational(0)), PoleError);
    CHECK_THROWS_AS(RationalFunction(P({1}), Poly()), PoleError);
    const RationalFunction sum = g + RationalFunction::constant(1);
    CHECK(sum == RationalFunction(P({1, 1}), P({0, 1})));
    CHECK(((g * g) / g) == g);
}

TEST_CASE("bareiss determinant agrees with cofactor expansion") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> entry(-9, 9);
    for (int n = 1; n <= 6; ++n) {
        for (int trial = 0; trial < 5; ++trial) {
            IntegerMatrix m(n, std::vector<BigInt>(n));
            for (auto &row : m)
                for (auto &x : row) x = entry(rng);
            CHECK(bareiss_determinant(m) == laplace_det(m));
        }
    }
    IntegerMatrix singular{{1, 2, 3}, {2, 4, 6}, {0, 1, 5}};
    CHECK(bareiss_determinant(singular) == 0);
    IntegerMatrix needs_pivot{{0, 1}, {1, 0}};
    CHECK(bareiss_determinant(needs_pivot) == -1);
}

TEST_CASE("exact rank and kernel of low-rank products") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 12; ++trial) {
        const int rows = 3 + trial % 4, cols = 4 + trial % 3, rank = 1 + trial % 3;
        RationalMatrix a(rows, std::vector<Rational>(rank)), b(rank, std::vector<Rational>(cols));
        for (auto &row : a)
            for (auto &x : row) x = random_rational(rng, -4, 4, 6);
        for (auto &row : b)
            for (auto &x : row) x = random_rational(rng, -4, 4, 6);
        RationalMatrix m(rows, std::vector<Rational>(cols, Rational(0)));
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j)
                for (int k = 0; k < rank; ++k) m[i][j] += a[i][k] * b[k][j];
        const int r = exact_rank(m);
        CHECK(r == std::min(rank, std::min(rows, cols)));
        const auto kernel = exact_kernel(m);
        CHECK(static_cast<int>(kernel.size()) == cols - r);
        for (const auto &v : kernel) {
            bool nonzero = false;
            for (const auto &x : v) nonzero = nonzero || x != 0;
            CHECK(nonzero);
            for (int i = 0; i < rows; ++i) {
                Rational acc = 0;
                for (int j = 0; j < cols; ++j) acc += m[i][j] * v[j];
                CHECK(acc == 0);
            }
        }
    }
    CHECK(exact_rank({}) == 0);
    CHECK(exact_rank({{0, 0}, {0, 0}}) == 0);
    CHECK(exact_kernel({{0, 0}}).size() == 2);
}

}
