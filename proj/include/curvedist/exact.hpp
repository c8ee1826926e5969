#pragma once

// Exact rational arithmetic: univariate polynomials and rational functions
// over Q, Sturm root counting, and fraction-free integer elimination.

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace curvedist {

using Rational = mpq_class;
using BigInt = mpz_class;

/// Parses "p/q", "-7", "0.3", "1.5e-3" into an exact rational.
Rational parse_rational(std::string_view text);
std::string format_rational(const Rational &value);
inline double to_double(const Rational &value) { return value.get_d(); }
/// Exact rational equal to a finite double.
Rational from_double(double value);

/// Dense univariate polynomial over Q, coefficients in ascending order.
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<Rational> coeffs);
    static Poly constant(const Rational &c);
    static Poly monomial(const Rational &c, std::size_t power);
    static Poly identity() { return monomial(1, 1); }

    /// Degree; -1 for the zero polynomial.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    const std::vector<Rational> &coeffs() const { return coeffs_; }
    Rational coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Rational(0); }
    const Rational &leading() const { return coeffs_.back(); }

    Rational eval(const Rational &t) const;
    double eval(double t) const;
    Poly derivative() const;
    Poly monic() const;

    Poly operator-() const;
    friend Poly operator+(const Poly &a, const Poly &b);
    friend Poly operator-(const Poly &a, const Poly &b);
    friend Poly operator*(const Poly &a, const Poly &b);
    friend Poly operator*(const Rational &s, const Poly &a);
    friend bool operator==(const Poly &a, const Poly &b) { return a.coeffs_ == b.coeffs_; }

    /// Euclidean division: a = q*b + r with deg r < deg b.
    static void divmod(const Poly &a, const Poly &b, Poly &quotient, Poly &remainder);
    /// Monic gcd; gcd(0,0) = 0.
    static Poly gcd(const Poly &a, const Poly &b);

private:
    void trim();
    std::vector<Rational> coeffs_;
};

/// Quotient num/den with gcd(num, den) = 1 and den monic.
class RationalFunction {
public:
    RationalFunction() : num_(), den_(Poly::constant(1)) {}
    RationalFunction(Poly num, Poly den);
    static RationalFunction constant(const Rational &c) { return {Poly::constant(c), Poly::constant(1)}; }
    static RationalFunction polynomial(Poly p) { return {std::move(p), Poly::constant(1)}; }

    const Poly &num() const { return num_; }
    const Poly &den() const { return den_; }
    /// max(deg num, deg den).
    int degree() const;
    bool is_constant() const { return num_.degree() <= 0 && den_.degree() <= 0; }

    Rational eval(const Rational &t) const;
    double eval(double t) const;
    RationalFunction derivative() const;

    friend RationalFunction operator+(const RationalFunction &a, const RationalFunction &b);
    friend RationalFunction operator-(const RationalFunction &a, const RationalFunction &b);
    friend RationalFunction operator*(const RationalFunction &a, const RationalFunction &b);
    friend RationalFunction operator/(const RationalFunction &a, const RationalFunction &b);
    RationalFunction operator-() const { return {-num_, den_}; }
    friend bool operator==(const RationalFunction &a, const RationalFunction &b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

private:
    Poly num_;
    Poly den_;
};

/// Number of distinct real roots of p in the open interval (lo, hi);
/// std::nullopt endpoints mean -inf / +inf. Uses a Sturm sequence on the
/// square-free part after dividing out roots at the endpoints.
int count_real_roots(const Poly &p, const std::optional<Rational> &lo, const std::optional<Rational> &hi);

using RationalMatrix = std::vector<std::vector<Rational>>;
using IntegerMatrix = std::vector<std::vector<BigInt>>;

/// Determinant by Bareiss fraction-free elimination.
BigInt bareiss_determinant(IntegerMatrix m);
/// Rank by Bareiss elimination after clearing denominators row-wise.
int exact_rank(const RationalMatrix &m);
/// Basis of the right kernel from the reduced row echelon form over Q.
std::vector<std::vector<Rational>> exact_kernel(const RationalMatrix &m);

} // namespace curvedist
