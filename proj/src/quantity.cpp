#include "curvedist/quantity.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace curvedist {

namespace {

std::vector<double> to_std(const Vec &v) { return {v.data(), v.data() + v.size()}; }

Vec to_eigen(const std::vector<double> &v) { return Eigen::Map<const Vec>(v.data(), static_cast<Eigen::Index>(v.size())); }

constexpr auto lift_double = [](const Rational &r) { return to_double(r); };
constexpr auto lift_exact = [](const Rational &r) { return r; };
constexpr auto lift_function = [](const Rational &r) { return RationalFunction::constant(r); };

} // namespace

Quantity Quantity::squared_euclidean(int dimension) {
    if (dimension < 1) throw ValidationError("squared Euclidean distance needs dimension >= 1");
    Quantity q;
    q.kind_ = QuantityKind::SquaredEuclidean;
    q.dimension_ = dimension;
    return q;
}

Quantity Quantity::pinned_area(Rational apex_x, Rational apex_y) {
    Quantity q;
    q.kind_ = QuantityKind::PinnedAreaSquared;
    q.dimension_ = 2;
    q.apex_ = {std::move(apex_x), std::move(apex_y)};
    return q;
}

Quantity Quantity::polynomial(int dimension, std::vector<Monomial> terms) {
    if (dimension < 1) throw ValidationError("polynomial quantity needs dimension >= 1");
    std::map<std::vector<int>, Rational> merged;
    for (auto &t : terms) {
        if (t.exponents.size() != static_cast<std::size_t>(2 * dimension))
            throw ValidationError("monomial exponent vector must have length 2d");
        if (std::any_of(t.exponents.begin(), t.exponents.end(), [](int e) { return e < 0; }))
            throw ValidationError("monomial exponents must be non-negative");
        merged[t.exponents] += t.coeff;
    }
    Quantity q;
    q.kind_ = QuantityKind::GeneralPolynomial;
    q.dimension_ = dimension;
    for (auto &[exps, c] : merged)
        if (c != 0) q.terms_.push_back({exps, c});
    if (q.terms_.empty()) throw ValidationError("polynomial quantity is identically zero");
    return q;
}

int Quantity::degree() const {
    switch (kind_) {
    case QuantityKind::SquaredEuclidean:
        return 2;
    case QuantityKind::PinnedAreaSquared:
        return 4;
    case QuantityKind::GeneralPolynomial: {
        int deg = 0;
        for (const auto &t : terms_) deg = std::max(deg, std::accumulate(t.exponents.begin(), t.exponents.end(), 0));
        return deg;
    }
    }
    return 0;
}

std::string Quantity::describe() const {
    switch (kind_) {
    case QuantityKind::SquaredEuclidean:
        return "sq_euclidean";
    case QuantityKind::PinnedAreaSquared:
        return "pinned_area(" + format_rational(apex_[0]) + "," + format_rational(apex_[1]) + ")";
    case QuantityKind::GeneralPolynomial:
        return "poly[" + std::to_string(terms_.size()) + " terms]";
    }
    return "?";
}

void Quantity::check_dims(std::size_t nx, std::size_t ny) const {
    const auto d = static_cast<std::size_t>(dimension_);
    if (nx != d || ny != d)
        throw DimensionMismatch("quantity expects points of dimension " + std::to_string(d) + ", got " +
                                std::to_string(nx) + " and " + std::to_string(ny));
}

double eval_quantity(const Quantity &q, const Vec &x, const Vec &y) {
    if (q.kind() == QuantityKind::SquaredEuclidean) {
        if (x.size() != q.dimension() || y.size() != q.dimension())
            throw DimensionMismatch("quantity expects points of dimension " + std::to_string(q.dimension()));
        return (x - y).squaredNorm();
    }
    return q.eval(to_std(x), to_std(y), lift_double);
}

Rational eval_quantity_exact(const Quantity &q, const ExactPoint &x, const ExactPoint &y) {
    return q.eval(x, y, lift_exact);
}

RationalFunction eval_quantity_symbolic(const Quantity &q, const std::vector<RationalFunction> &x,
                                        const std::vector<RationalFunction> &y) {
    return q.eval(x, y, lift_function);
}

Gradient grad_quantity(const Quantity &q, const Vec &x, const Vec &y) {
    auto [dx, dy] = q.gradient(to_std(x), to_std(y), lift_double);
    return {to_eigen(dx), to_eigen(dy)};
}

std::pair<ExactPoint, ExactPoint> grad_quantity_exact(const Quantity &q, const ExactPoint &x, const ExactPoint &y) {
    return q.gradient(x, y, lift_exact);
}

} // namespace curvedist
