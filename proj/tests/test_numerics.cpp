#include "curvedist/numerics.hpp"
#include "curvedist/parallel.hpp"
#include "doctest.h"

#include <atomic>
#include <cmath>
#include <numeric>
#include <stdexcept>

using namespace curvedist;
using namespace curvedist::numerics;

TEST_SUITE("numerics") {

TEST_CASE("gauss-legendre is exact on polynomials up to degree 2n-1") {
    auto f = [](double x) { return std::pow(x, 19) - 3 * std::pow(x, 7) + 1; };
    const double exact = std::pow(2.0, 20) / 20 - 3 * std::pow(2.0, 8) / 8 + 2 - (1.0 / 20 - 3.0 / 8 + 1);
    CHECK(gauss_legendre(f, 1.0, 2.0, 10) == doctest::Approx(exact).epsilon(1e-13));
    CHECK(gauss_legendre([](double) { return 1.0; }, -1, 3, 1) == doctest::Approx(4.0));
}

TEST_CASE("adaptive quadrature handles endpoint singular derivative") {
    const double v = adaptive_integrate([](double x) { return std::sqrt(x); }, 0.0, 1.0, 1e-13);
    CHECK(std::abs(v - 2.0 / 3.0) < 1e-10);
    CHECK(adaptive_integrate([](double x) { return std::cos(x); }, 0, M_PI / 2, 1e-14) == doctest::Approx(1.0));
}

TEST_CASE("finite difference weights") {
    const auto w2 = fd_weights({-1, 0, 1}, 2);
    CHECK(w2[0] == doctest::Approx(1.0));
    CHECK(w2[1] == doctest::Approx(-2.0));
    CHECK(w2[2] == doctest::Approx(1.0));
    const auto w1 = fd_weights({-2, -1, 0, 1, 2}, 1);
    const double want[] = {1.0 / 12, -2.0 / 3, 0.0, 2.0 / 3, -1.0 / 12};
    for (int i = 0; i < 5; ++i) CHECK(w1[i] == doctest::Approx(want[i]).epsilon(1e-14));
    // weights for order k annihilate lower powers and reproduce x^k / k!
    const auto w3 = fd_weights({-3, -2, -1, 0, 1, 2, 3}, 3);
    for (int p = 0; p <= 6; ++p) {
        double acc = 0;
        for (int i = 0; i < 7; ++i) acc += w3[i] * std::pow(i - 3.0, p);
        CHECK(acc == doctest::Approx(p == 3 ? 6.0 : 0.0));
    }
}

TEST_CASE("chebyshev nodes are interior and sorted") {
    const auto nodes = chebyshev_nodes(0.0, 1.0, 9);
    REQUIRE(nodes.size() == 9);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        CHECK(nodes[i] > 0.0);
        CHECK(nodes[i] < 1.0);
        if (i) CHECK(nodes[i] > nodes[i - 1]);
    }
    CHECK(nodes[4] == doctest::Approx(0.5));
}

TEST_CASE("power series helpers") {
    // sqrt(1 + x) = 1 + x/2 - x^2/8 + x^3/16
    const auto s = series::sqrt({1.0, 1.0}, 4);
    CHECK(s[1] == doctest::Approx(0.5));
    CHECK(s[2] == doctest::Approx(-0.125));
    CHECK(s[3] == doctest::Approx(0.0625));
    const auto sq = series::mul(s, s, 4);
    CHECK(sq[0] == doctest::Approx(1.0));
    CHECK(sq[1] == doctest::Approx(1.0));
    CHECK(std::abs(sq[2]) < 1e-15);
    const series::Series b{0.0, 1.0, 1.0, 0.5};
    const auto inv = series::revert(b, 6);
    const auto id = series::compose(b, inv, 6);
    CHECK(id[1] == doctest::Approx(1.0));
    for (std::size_t i = 2; i < 6; ++i) CHECK(std::abs(id[i]) < 1e-12);
}

TEST_CASE("parallel_for visits each index once for any worker count") {
    for (unsigned threads : {1u, 3u, 8u}) {
        set_thread_count(threads);
        std::vector<int> hits(1000, 0);
        parallel_for(hits.size(), [&](std::size_t i) { hits[i] += static_cast<int>(i); });
        std::vector<int> want(1000);
        std::iota(want.begin(), want.end(), 0);
        CHECK(hits == want);
    }
    set_thread_count(8);
    std::atomic<int> inner{0};
    parallel_for(4, [&](std::size_t) { parallel_for(5, [&](std::size_t) { ++inner; }); });
    CHECK(inner.load() == 20);
    CHECK_THROWS_AS(parallel_for(10,
                                 [](std::size_t i) {
                                     if (i == 7) throw std::runtime_error("boom");
                                 }),
                    std::runtime_error);
    set_thread_count(0);
    CHECK(thread_count() >= 1);
}

}
