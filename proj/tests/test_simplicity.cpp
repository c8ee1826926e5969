#include "curvedist/errors.hpp"
#include "curvedist/simplicity.hpp"
#include "doctest.h"

using namespace curvedist;

namespace {

const SimplicityCondition &condition(const SimplicityReport &r, int index) { return r.conditions.at(index - 1); }

} // namespace

TEST_SUITE("simplicity") {

TEST_CASE("line fails only the curvature condition") {
    const auto r = check_simplicity(builtin_curve("line"), Quantity::squared_euclidean(2));
    REQUIRE(r.conditions.size() == 5);
    CHECK_FALSE(r.all_passed());
    CHECK_FALSE(condition(r, 2).passed);
    CHECK(condition(r, 2).witness.find("gamma''") != std::string::npos);
    CHECK(condition(r, 1).passed);
    CHECK(condition(r, 3).passed);
    CHECK(r.window.lo() == -4.0);
}

TEST_CASE("parabola pieces pass") {
    const Curve parabola = builtin_curve("parabola");
    const auto sq = check_simplicity(parabola.restricted(Interval(0.0, 1.0)), Quantity::squared_euclidean(2));
    CHECK(sq.all_passed());
    for (const auto &c : sq.conditions) CHECK(c.witness.empty());
    const auto area = check_simplicity(parabola.restricted(Interval(0.1, 1.0)), Quantity::pinned_area(0, 0));
    CHECK(area.all_passed());
    CHECK(area.grid_size == 256);
}

TEST_CASE("asymmetric quantity fails the distance-polynomial condition") {
    // (x1 - 2 y1)^2 + (x2 - y2)^2
    const Quantity q = Quantity::polynomial(
        2, {{{2, 0, 0, 0}, 1}, {{1, 0, 1, 0}, -4}, {{0, 0, 2, 0}, 4}, {{0, 2, 0, 0}, 1}, {{0, 1, 0, 1}, -2}, {{0, 0, 0, 2}, 1}});
    const auto r = check_simplicity(builtin_curve("parabola").restricted(Interval(0.5, 2.0)), q);
    CHECK_FALSE(condition(r, 3).passed);
    CHECK_FALSE(condition(r, 3).witness.empty());
}

TEST_CASE("full circle fails the submersion condition at antipodes") {
    const auto r = check_simplicity(builtin_curve("unit_circle"), Quantity::squared_euclidean(2));
    CHECK_FALSE(condition(r, 5).passed);
    CHECK(condition(r, 5).witness.find("vanishes") != std::string::npos);
}

TEST_CASE("argument validation") {
    CHECK_THROWS_AS(check_simplicity(builtin_curve("parabola"), Quantity::squared_euclidean(3)), DimensionMismatch);
    CHECK_THROWS_AS(check_simplicity(builtin_curve("parabola"), Quantity::squared_euclidean(2), 4), ValidationError);
    CHECK_THROWS_AS(check_simplicity(builtin_curve("parabola"), Quantity::squared_euclidean(2), 256, 0.0),
                    ValidationError);
}

}
