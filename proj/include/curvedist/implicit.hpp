#pragma once

// Bivariate polynomials over Q and resultant-based implicitization of
// rational plane curves.

#include "curvedist/exact.hpp"

#include <string>
#include <vector>

namespace curvedist {

/// Dense bivariate polynomial; coeff(i, j) multiplies X^i Y^j.
class BiPoly {
public:
    BiPoly() = default;
    /// grid[i][j] is the coefficient of X^i Y^j; rows may be ragged.
    explicit BiPoly(std::vector<std::vector<Rational>> grid);

    bool is_zero() const { return grid_.empty(); }
    int degree_x() const { return static_cast<int>(grid_.size()) - 1; }
    int degree_y() const;
    int total_degree() const;
    Rational coeff(int i, int j) const;
    const std::vector<std::vector<Rational>> &grid() const { return grid_; }

    Rational eval(const Rational &x, const Rational &y) const;
    double eval(double x, double y) const;

    friend bool operator==(const BiPoly &a, const BiPoly &b) { return a.grid_ == b.grid_; }
    std::string to_string() const;

private:
    void trim();
    std::vector<std::vector<Rational>> grid_;
};

/// Integer coefficients with gcd 1 and a positive leading coefficient under
/// graded-lex order (higher total degree first, then higher X power).
BiPoly normalize(const BiPoly &p);

/// Product of the distinct irreducible factors (up to a constant).
BiPoly square_free_part(const BiPoly &p);

/// Square-free, normalized Res_t(g1(t) X - f1(t), g2(t) Y - f2(t)) for
/// x = f1/g1, y = f2/g2. Each Sylvester determinant is evaluated exactly by
/// Bareiss elimination on an integer grid of (X, Y) and interpolated.
BiPoly implicitize_rational(const RationalFunction &x, const RationalFunction &y);

/// Raw resultant before square-free reduction and normalization.
BiPoly sylvester_resultant(const RationalFunction &x, const RationalFunction &y);

} // namespace curvedist
