#pragma once

// Distance polynomials D(x, y) on pairs of ambient points, with exact
// partial-derivative vectors D_X and D_Y.

#include "curvedist/curve.hpp"
#include "curvedist/errors.hpp"
#include "curvedist/exact.hpp"

#include <string>
#include <utility>
#include <vector>

namespace curvedist {

enum class QuantityKind { SquaredEuclidean, PinnedAreaSquared, GeneralPolynomial };

/// Term of a general polynomial; exponents index (x_1..x_d, y_1..y_d).
struct Monomial {
    std::vector<int> exponents;
    Rational coeff;
    friend bool operator==(const Monomial &, const Monomial &) = default;
};

class Quantity {
public:
    static Quantity squared_euclidean(int dimension);
    /// ((x - v) x (y - v))^2 in the plane.
    static Quantity pinned_area(Rational apex_x, Rational apex_y);
    /// Terms are merged, zero terms dropped, and sorted by exponent vector.
    static Quantity polynomial(int dimension, std::vector<Monomial> terms);

    QuantityKind kind() const { return kind_; }
    int dimension() const { return dimension_; }
    const ExactPoint &apex() const { return apex_; }
    const std::vector<Monomial> &terms() const { return terms_; }
    /// Total degree of D.
    int degree() const;
    std::string describe() const;

    /// D(x, y) over any commutative ring T with a lift from Q.
    template <typename T, typename Lift>
    T eval(const std::vector<T> &x, const std::vector<T> &y, Lift lift) const;
    /// (D_X, D_Y) over the same ring.
    template <typename T, typename Lift>
    std::pair<std::vector<T>, std::vector<T>> gradient(const std::vector<T> &x, const std::vector<T> &y, Lift lift) const;

private:
    Quantity() = default;
    void check_dims(std::size_t nx, std::size_t ny) const;

    QuantityKind kind_ = QuantityKind::SquaredEuclidean;
    int dimension_ = 0;
    ExactPoint apex_;
    std::vector<Monomial> terms_;
};

double eval_quantity(const Quantity &q, const Vec &x, const Vec &y);
Rational eval_quantity_exact(const Quantity &q, const ExactPoint &x, const ExactPoint &y);
/// D composed with rational functions of one parameter.
RationalFunction eval_quantity_symbolic(const Quantity &q, const std::vector<RationalFunction> &x,
                                        const std::vector<RationalFunction> &y);

struct Gradient {
    Vec dx;
    Vec dy;
};
Gradient grad_quantity(const Quantity &q, const Vec &x, const Vec &y);
std::pair<ExactPoint, ExactPoint> grad_quantity_exact(const Quantity &q, const ExactPoint &x, const ExactPoint &y);

// ---------------------------------------------------------------------------

template <typename T, typename Lift>
T Quantity::eval(const std::vector<T> &x, const std::vector<T> &y, Lift lift) const {
    check_dims(x.size(), y.size());
    switch (kind_) {
    case QuantityKind::SquaredEuclidean: {
        T acc = lift(Rational(0));
        for (std::size_t i = 0; i < x.size(); ++i) {
            T diff = x[i] - y[i];
            acc = acc + diff * diff;
        }
        return acc;
    }
    case QuantityKind::PinnedAreaSquared: {
        const T vx = lift(apex_[0]);
        const T vy = lift(apex_[1]);
        T cross = (x[0] - vx) * (y[1] - vy) - (x[1] - vy) * (y[0] - vx);
        return cross * cross;
    }
    case QuantityKind::GeneralPolynomial: {
        T acc = lift(Rational(0));
        for (const auto &term : terms_) {
            T prod = lift(term.coeff);
            for (std::size_t v = 0; v < term.exponents.size(); ++v) {
                const T &base = v < x.size() ? x[v] : y[v - x.size()];
                for (int e = 0; e < term.exponents[v]; ++e) prod = prod * base;
            }
            acc = acc + prod;
        }
        return acc;
    }
    }
    return lift(Rational(0));
}

template <typename T, typename Lift>
std::pair<std::vector<T>, std::vector<T>> Quantity::gradient(const std::vector<T> &x, const std::vector<T> &y,
                                                             Lift lift) const {
    check_dims(x.size(), y.size());
    const std::size_t d = x.size();
    std::vector<T> dx(d, lift(Rational(0))), dy(d, lift(Rational(0)));
    switch (kind_) {
    case QuantityKind::SquaredEuclidean:
        for (std::size_t i = 0; i < d; ++i) {
            T two_diff = lift(Rational(2)) * (x[i] - y[i]);
            dx[i] = two_diff;
            dy[i] = lift(Rational(0)) - two_diff;
        }
        break;
    case QuantityKind::PinnedAreaSquared: {
        const T vx = lift(apex_[0]);
        const T vy = lift(apex_[1]);
        const T ax = x[0] - vx, ay = x[1] - vy, bx = y[0] - vx, by = y[1] - vy;
        const T twice_cross = lift(Rational(2)) * (ax * by - ay * bx);
        dx[0] = twice_cross * by;
        dx[1] = lift(Rational(0)) - twice_cross * bx;
        dy[0] = lift(Rational(0)) - twice_cross * ay;
        dy[1] = twice_cross * ax;
        break;
    }
    case QuantityKind::GeneralPolynomial:
        for (const auto &term : terms_) {
            for (std::size_t w = 0; w < 2 * d; ++w) {
                if (term.exponents[w] == 0) continue;
                T prod = lift(term.coeff * term.exponents[w]);
                for (std::size_t v = 0; v < 2 * d; ++v) {
                    const T &base = v < d ? x[v] : y[v - d];
                    const int e = term.exponents[v] - (v == w ? 1 : 0);
                    for (int k = 0; k < e; ++k) prod = prod * base;
                }
                if (w < d)
                    dx[w] = dx[w] + prod;
                else
                    dy[w - d] = dy[w - d] + prod;
            }
        }
        break;
    }
    return {std::move(dx), std::move(dy)};
}

} // namespace curvedist
