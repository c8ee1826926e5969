#include "curvedist/implicit.hpp"

#include "curvedist/errors.hpp"

#include <algorithm>
#include <sstream>

namespace curvedist {

namespace {

// Polynomial in Y whose coefficients are polynomials in X; index = Y power.
using YPoly = std::vector<Poly>;

void trim(YPoly &p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
}

int degree_y(const YPoly &p) { return static_cast<int>(p.size()) - 1; }

YPoly to_ypoly(const BiPoly &b) {
    YPoly out(static_cast<std::size_t>(std::max(b.degree_y() + 1, 0)));
    for (int j = 0; j <= b.degree_y(); ++j) {
        std::vector<Rational> cx(static_cast<std::size_t>(b.degree_x() + 1));
        for (int i = 0; i <= b.degree_x(); ++i) cx[static_cast<std::size_t>(i)] = b.coeff(i, j);
        out[static_cast<std::size_t>(j)] = Poly(std::move(cx));
    }
    trim(out);
    return out;
}

BiPoly from_ypoly(const YPoly &p) {
    int dx = -1;
    for (const auto &c : p) dx = std::max(dx, c.degree());
    if (dx < 0) return {};
    std::vector<std::vector<Rational>> grid(static_cast<std::size_t>(dx + 1), std::vector<Rational>(p.size(), Rational(0)));
    for (std::size_t j = 0; j < p.size(); ++j)
        for (int i = 0; i <= p[j].degree(); ++i) grid[static_cast<std::size_t>(i)][j] = p[j].coeff(static_cast<std::size_t>(i));
    return BiPoly(std::move(grid));
}

Poly exact_quotient(const Poly &a, const Poly &b) {
    Poly q, r;
    Poly::divmod(a, b, q, r);
    if (!r.is_zero()) throw std::logic_error("inexact polynomial division");
    return q;
}

Poly content(const YPoly &p) {
    Poly g;
    for (const auto &c : p) g = Poly::gcd(g, c);
    return g;
}

YPoly primitive_part(const YPoly &p) {
    if (p.empty()) return p;
    Poly c = content(p);
    YPoly out;
    for (const auto &coef : p) out.push_back(exact_quotient(coef, c));
    return out;
}

YPoly derivative_y(const YPoly &p) {
    YPoly out;
    for (std::size_t j = 1; j < p.size(); ++j) out.push_back(Rational(static_cast<long>(j)) * p[j]);
    trim(out);
    return out;
}

// lc(b)^(deg a - deg b + 1) * a mod b.
YPoly pseudo_remainder(YPoly a, const YPoly &b) {
    const int n = degree_y(b);
    const Poly &lb = b.back();
    int m = degree_y(a);
    for (int k = m - n; k >= 0; --k) {
        const auto top = static_cast<std::size_t>(n + k);
        Poly lr = top < a.size() ? a[top] : Poly();
        for (auto &c : a) c = lb * c;
        if (!lr.is_zero())
            for (int j = 0; j <= n; ++j) a[static_cast<std::size_t>(j + k)] = a[static_cast<std::size_t>(j + k)] - lr * b[static_cast<std::size_t>(j)];
        trim(a);
    }
    return a;
}

YPoly gcd_primitive(YPoly a, YPoly b) {
    a = primitive_part(a);
    b = primitive_part(b);
    if (degree_y(a) < degree_y(b)) std::swap(a, b);
    while (!b.empty()) {
        YPoly r = pseudo_remainder(a, b);
        a = std::move(b);
        b = primitive_part(r);
    }
    return primitive_part(a);
}

YPoly exact_quotient_y(YPoly a, const YPoly &b) {
    const int n = degree_y(b);
    YPoly q(static_cast<std::size_t>(std::max(degree_y(a) - n + 1, 0)));
    while (!a.empty() && degree_y(a) >= n) {
        const int shift = degree_y(a) - n;
        Poly lead = exact_quotient(a.back(), b.back());
        q[static_cast<std::size_t>(shift)] = lead;
        for (int j = 0; j <= n; ++j)
            a[static_cast<std::size_t>(j + shift)] = a[static_cast<std::size_t>(j + shift)] - lead * b[static_cast<std::size_t>(j)];
        trim(a);
    }
    if (!a.empty()) throw std::logic_error("inexact bivariate division");
    trim(q);
    return q;
}

// Newton divided differences through (xs[k], ys[k]).
Poly interpolate(const std::vector<Rational> &xs, std::vector<Rational> ys) {
    const std::size_t n = xs.size();
    for (std::size_t level = 1; level < n; ++level)
        for (std::size_t k = n - 1; k >= level; --k) ys[k] = (ys[k] - ys[k - 1]) / (xs[k] - xs[k - level]);
    Poly out = Poly::constant(ys[n - 1]);
    for (std::size_t k = n - 1; k-- > 0;) out = out * Poly(std::vector<Rational>{-xs[k], Rational(1)}) + Poly::constant(ys[k]);
    return out;
}

BigInt denominator_lcm(const Poly &a, const Poly &b) {
    BigInt l = 1;
    for (const auto &c : a.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    for (const auto &c : b.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    return l;
}

} // namespace

BiPoly::BiPoly(std::vector<std::vector<Rational>> grid) : grid_(std::move(grid)) { trim(); }

void BiPoly::trim() {
    for (auto &row : grid_)
        while (!row.empty() && row.back() == 0) row.pop_back();
    while (!grid_.empty() && grid_.back().empty()) grid_.pop_back();
}

int BiPoly::degree_y() const {
    int d = -1;
    for (const auto &row : grid_) d = std::max(d, static_cast<int>(row.size()) - 1);
    return d;
}

int BiPoly::total_degree() const {
    int d = -1;
    for (std::size_t i = 0; i < grid_.size(); ++i)
        for (std::size_t j = 0; j < grid_[i].size(); ++j)
            if (grid_[i][j] != 0) d = std::max(d, static_cast<int>(i + j));
    return d;
}

Rational BiPoly::coeff(int i, int j) const {
    if (i < 0 || j < 0 || static_cast<std::size_t>(i) >= grid_.size()) return 0;
    const auto &row = grid_[static_cast<std::size_t>(i)];
    return static_cast<std::size_t>(j) < row.size() ? row[static_cast<std::size_t>(j)] : Rational(0);
}

Rational BiPoly::eval(const Rational &x, const Rational &y) const {
    Rational acc = 0;
    for (auto i = grid_.size(); i-- > 0;) {
        Rational row = 0;
        for (auto j = grid_[i].size(); j-- > 0;) row = row * y + grid_[i][j];
        acc = acc * x + row;
    }
    return acc;
}

double BiPoly::eval(double x, double y) const {
    double acc = 0.0;
    for (auto i = grid_.size(); i-- > 0;) {
        double row = 0.0;
        for (auto j = grid_[i].size(); j-- > 0;) row = row * y + grid_[i][j].get_d();
        acc = acc * x + row;
    }
    return acc;
}

std::string BiPoly::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (int deg = total_degree(); deg >= 0; --deg) {
        for (int i = deg; i >= 0; --i) {
            Rational c = coeff(i, deg - i);
            if (c == 0) continue;
            os << (first ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + "));
            Rational a = abs(c);
            const int j = deg - i;
            if (a != 1 || deg == 0) os << format_rational(a);
            if (i > 0) os << (a != 1 ? "*" : "") << "X" << (i > 1 ? "^" + std::to_string(i) : "");
            if (j > 0) os << ((a != 1 || i > 0) ? "*" : "") << "Y" << (j > 1 ? "^" + std::to_string(j) : "");
            first = false;
        }
    }
    return first ? "0" : os.str();
}

BiPoly normalize(const BiPoly &p) {
    if (p.is_zero()) return p;
    BigInt den_lcm = 1, num_gcd = 0;
    for (const auto &row : p.grid())
        for (const auto &c : row) {
            if (c == 0) continue;
            mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
            mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num_mpz_t());
        }
    // Leading term under graded-lex order.
    int lead_i = -1, lead_j = -1;
    for (std::size_t i = 0; i < p.grid().size(); ++i)
        for (std::size_t j = 0; j < p.grid()[i].size(); ++j) {
            if (p.grid()[i][j] == 0) continue;
            const int ii = static_cast<int>(i), jj = static_cast<int>(j);
            if (ii + jj > lead_i + lead_j || (ii + jj == lead_i + lead_j && ii > lead_i)) {
                lead_i = ii;
                lead_j = jj;
            }
        }
    // Every coefficient is num/den with den | den_lcm; num_gcd divides every numerator.
    Rational scale(den_lcm, num_gcd);
    scale.canonicalize();
    if (p.coeff(lead_i, lead_j) < 0) scale = -scale;
    auto grid = p.grid();
    for (auto &row : grid)
        for (auto &c : row) c *= scale;
    return BiPoly(std::move(grid));
}

BiPoly square_free_part(const BiPoly &p) {
    if (p.is_zero()) return p;
    YPoly yp = to_ypoly(p);
    Poly c = content(yp);
    YPoly pp = primitive_part(yp);
    Poly c_sf = c.degree() > 0 ? exact_quotient(c, Poly::gcd(c, c.derivative())) : Poly::constant(1);
    YPoly pp_sf = pp;
    if (degree_y(pp) > 0) {
        YPoly g = gcd_primitive(pp, derivative_y(pp));
        if (degree_y(g) > 0) pp_sf = exact_quotient_y(pp, g);
    }
    for (auto &coef : pp_sf) coef = coef * c_sf;
    return from_ypoly(pp_sf);
}

BiPoly sylvester_resultant(const RationalFunction &x, const RationalFunction &y) {
    if (x.is_constant() && y.is_constant()) throw DegenerateParametrization("both coordinates are constant");
    const Poly &f1 = x.num(), &g1 = x.den(), &f2 = y.num(), &g2 = y.den();
    const int n1 = std::max(f1.degree(), g1.degree());
    const int n2 = std::max(f2.degree(), g2.degree());
    const BigInt la = denominator_lcm(f1, g1);
    const BigInt lb = denominator_lcm(f2, g2);
    const auto size = static_cast<std::size_t>(n1 + n2);

    // Integer coefficient of t^k in L*(g X0 - f).
    auto coeff = [](const Poly &f, const Poly &g, const BigInt &l, long x0, int k) {
        Rational v = (g.coeff(static_cast<std::size_t>(k)) * x0 - f.coeff(static_cast<std::size_t>(k))) * l;
        return BigInt(v.get_num());
    };
    BigInt scale_int;
    {
        BigInt pa, pb;
        mpz_pow_ui(pa.get_mpz_t(), la.get_mpz_t(), static_cast<unsigned long>(n2));
        mpz_pow_ui(pb.get_mpz_t(), lb.get_mpz_t(), static_cast<unsigned long>(n1));
        scale_int = pa * pb;
    }
    const Rational scale(BigInt(1), scale_int);

    std::vector<Rational> xs, ys;
    for (int i = 0; i <= n2; ++i) xs.emplace_back(i);
    for (int j = 0; j <= n1; ++j) ys.emplace_back(j);
    // values[jy][ix] = Res at (X, Y) = (ix, jy).
    std::vector<std::vector<Rational>> values(ys.size(), std::vector<Rational>(xs.size()));
    for (int jy = 0; jy <= n1; ++jy) {
        for (int ix = 0; ix <= n2; ++ix) {
            IntegerMatrix m(size, std::vector<BigInt>(size, BigInt(0)));
            for (int r = 0; r < n2; ++r)
                for (int k = 0; k <= n1; ++k)
                    m[static_cast<std::size_t>(r)][static_cast<std::size_t>(r + n1 - k)] = coeff(f1, g1, la, ix, k);
            for (int r = 0; r < n1; ++r)
                for (int k = 0; k <= n2; ++k)
                    m[static_cast<std::size_t>(n2 + r)][static_cast<std::size_t>(r + n2 - k)] = coeff(f2, g2, lb, jy, k);
            values[static_cast<std::size_t>(jy)][static_cast<std::size_t>(ix)] = Rational(bareiss_determinant(std::move(m))) * scale;
        }
    }
    // Interpolate in X for each sampled Y, then in Y for each X power.
    std::vector<Poly> in_x;
    for (const auto &row : values) in_x.push_back(interpolate(xs, row));
    std::vector<std::vector<Rational>> grid(static_cast<std::size_t>(n2 + 1));
    for (int i = 0; i <= n2; ++i) {
        std::vector<Rational> samples;
        for (const auto &p : in_x) samples.push_back(p.coeff(static_cast<std::size_t>(i)));
        Poly py = interpolate(ys, samples);
        grid[static_cast<std::size_t>(i)] = py.coeffs();
    }
    return BiPoly(std::move(grid));
}

BiPoly implicitize_rational(const RationalFunction &x, const RationalFunction &y) {
    BiPoly res = sylvester_resultant(x, y);
    if (res.is_zero()) throw DegenerateParametrization("resultant vanishes identically");
    return normalize(square_free_part(res));
}

} // namespace curvedist
