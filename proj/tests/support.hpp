#pragma once

#include "curvedist/exact.hpp"

#include <cmath>
#include <cstdint>
#include <random>

namespace testsupport {

inline curvedist::Rational random_rational(std::mt19937_64 &rng, long lo, long hi, long max_den) {
    std::uniform_int_distribution<long> den(1, max_den);
    const long q = den(rng);
    std::uniform_int_distribution<long> num(lo * q, hi * q);
    curvedist::Rational r(num(rng), q);
    r.canonicalize();
    return r;
}

inline double uniform(std::mt19937_64 &rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline double rel_err(double got, double want) { return std::abs(got - want) / std::max(1.0, std::abs(want)); }

// Composite Simpson rule; independent of the library quadrature.
template <typename F>
double simpson(F f, double a, double b, int intervals) {
    if (intervals % 2) ++intervals;
    const double h = (b - a) / intervals;
    double acc = f(a) + f(b);
    for (int i = 1; i < intervals; ++i) acc += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
    return acc * h / 3.0;
}

} // namespace testsupport
