#include "curvedist/exact.hpp"

#include "curvedist/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <utility>

namespace curvedist {

namespace {

std::string_view trim_view(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

bool all_digits(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

BigInt parse_integer(std::string_view s, std::string_view whole) {
    bool negative = false;
    if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    if (!all_digits(s)) throw ValidationError("malformed rational '" + std::string(whole) + "'");
    BigInt value(std::string(s), 10);
    return negative ? BigInt(-value) : value;
}

Rational parse_decimal(std::string_view s, std::string_view whole) {
    bool negative = false;
    if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    long exponent = 0;
    if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
        exponent = static_cast<long>(parse_integer(s.substr(e + 1), whole).get_si());
        s = s.substr(0, e);
    }
    std::string digits;
    if (auto dot = s.find('.'); dot != std::string_view::npos) {
        auto int_part = s.substr(0, dot);
        auto frac_part = s.substr(dot + 1);
        if ((!int_part.empty() && !all_digits(int_part)) || (!frac_part.empty() && !all_digits(frac_part)) ||
            (int_part.empty() && frac_part.empty()))
            throw ValidationError("malformed rational '" + std::string(whole) + "'");
        digits = std::string(int_part) + std::string(frac_part);
        exponent -= static_cast<long>(frac_part.size());
    } else {
        if (!all_digits(s)) throw ValidationError("malformed rational '" + std::string(whole) + "'");
        digits = std::string(s);
    }
    if (digits.empty()) digits = "0";
    Rational value{BigInt(digits, 10)};
    BigInt scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exponent)));
    if (exponent >= 0)
        value *= scale;
    else
        value /= scale;
    value.canonicalize();
    return negative ? Rational(-value) : value;
}

} // namespace

Rational parse_rational(std::string_view text) {
    auto s = trim_view(text);
    if (s.empty()) throw ValidationError("empty rational literal");
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        BigInt p = parse_integer(trim_view(s.substr(0, slash)), text);
        BigInt q = parse_integer(trim_view(s.substr(slash + 1)), text);
        if (q == 0) throw ValidationError("zero denominator in '" + std::string(text) + "'");
        Rational r(p, q);
        r.canonicalize();
        return r;
    }
    return parse_decimal(s, text);
}

std::string format_rational(const Rational &value) { return value.get_str(); }

Rational from_double(double value) {
    if (!std::isfinite(value)) throw ValidationError("non-finite value cannot be made exact");
    return Rational(value);
}

// ---------------------------------------------------------------------------
// Poly

Poly::Poly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Poly Poly::constant(const Rational &c) { return Poly(std::vector<Rational>{c}); }

Poly Poly::monomial(const Rational &c, std::size_t power) {
    std::vector<Rational> v(power + 1, Rational(0));
    v[power] = c;
    return Poly(std::move(v));
}

void Poly::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational Poly::eval(const Rational &t) const {
    Rational acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
    return acc;
}

double Poly::eval(double t) const {
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + it->get_d();
    return acc;
}

Poly Poly::derivative() const {
    if (coeffs_.size() <= 1) return {};
    std::vector<Rational> d(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * static_cast<long>(i);
    return Poly(std::move(d));
}

Poly Poly::monic() const {
    if (is_zero()) return {};
    Rational lc = leading();
    std::vector<Rational> v(coeffs_);
    for (auto &c : v) c /= lc;
    return Poly(std::move(v));
}

Poly Poly::operator-() const {
    std::vector<Rational> v(coeffs_);
    for (auto &c : v) c = -c;
    return Poly(std::move(v));
}

Poly operator+(const Poly &a, const Poly &b) {
    std::vector<Rational> v(std::max(a.coeffs_.size(), b.coeffs_.size()), Rational(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) v[i] += a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) v[i] += b.coeffs_[i];
    return Poly(std::move(v));
}

Poly operator-(const Poly &a, const Poly &b) { return a + (-b); }

Poly operator*(const Poly &a, const Poly &b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> v(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return Poly(std::move(v));
}

Poly operator*(const Rational &s, const Poly &a) {
    std::vector<Rational> v(a.coeffs_);
    for (auto &c : v) c *= s;
    return Poly(std::move(v));
}

void Poly::divmod(const Poly &a, const Poly &b, Poly &quotient, Poly &remainder) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    std::vector<Rational> r(a.coeffs_);
    int db = b.degree();
    int da = a.degree();
    std::vector<Rational> q(da >= db ? static_cast<std::size_t>(da - db + 1) : 0, Rational(0));
    const Rational &lb = b.leading();
    for (int k = da - db; k >= 0; --k) {
        Rational factor = r[static_cast<std::size_t>(k + db)] / lb;
        q[static_cast<std::size_t>(k)] = factor;
        if (factor == 0) continue;
        for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(k + j)] -= factor * b.coeffs_[static_cast<std::size_t>(j)];
    }
    quotient = Poly(std::move(q));
    remainder = Poly(std::move(r));
}

Poly Poly::gcd(const Poly &a, const Poly &b) {
    Poly x = a, y = b;
    while (!y.is_zero()) {
        Poly q, r;
        divmod(x, y, q, r);
        x = std::move(y);
        y = std::move(r);
    }
    return x.monic();
}

// ---------------------------------------------------------------------------
// RationalFunction

RationalFunction::RationalFunction(Poly num, Poly den) {
    if (den.is_zero()) throw PoleError("rational function with zero denominator");
    if (num.is_zero()) {
        num_ = {};
        den_ = Poly::constant(1);
        return;
    }
    Poly g = Poly::gcd(num, den);
    Poly r;
    Poly::divmod(num, g, num_, r);
    Poly::divmod(den, g, den_, r);
    Rational lc = den_.leading();
    num_ = Rational(1 / lc) * num_;
    den_ = den_.monic();
}

int RationalFunction::degree() const { return std::max(num_.degree(), den_.degree()); }

Rational RationalFunction::eval(const Rational &t) const {
    Rational d = den_.eval(t);
    if (d == 0) throw PoleError("denominator vanishes at t = " + format_rational(t));
    return num_.eval(t) / d;
}

double RationalFunction::eval(double t) const {
    double d = den_.eval(t);
    if (d == 0.0) throw PoleError("denominator vanishes at t = " + std::to_string(t));
    return num_.eval(t) / d;
}

RationalFunction RationalFunction::derivative() const {
    return {num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_};
}

RationalFunction operator+(const RationalFunction &a, const RationalFunction &b) {
    if (a.den_ == b.den_) return {a.num_ + b.num_, a.den_};
    return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
}

RationalFunction operator-(const RationalFunction &a, const RationalFunction &b) { return a + (-b); }

RationalFunction operator*(const RationalFunction &a, const RationalFunction &b) {
    return {a.num_ * b.num_, a.den_ * b.den_};
}

RationalFunction operator/(const RationalFunction &a, const RationalFunction &b) {
    if (b.num_.is_zero()) throw PoleError("division by the zero rational function");
    return {a.num_ * b.den_, a.den_ * b.num_};
}

// ---------------------------------------------------------------------------
// Sturm root counting

namespace {

int sign_of(const Rational &v) { return sgn(v); }

// Sign of p at +inf (toward_positive) or -inf.
int sign_at_infinity(const Poly &p, bool toward_positive) {
    if (p.is_zero()) return 0;
    int s = sign_of(p.leading());
    if (!toward_positive && (p.degree() % 2 == 1)) s = -s;
    return s;
}

int sign_changes(const std::vector<int> &signs) {
    int changes = 0;
    int last = 0;
    for (int s : signs) {
        if (s == 0) continue;
        if (last != 0 && s != last) ++changes;
        last = s;
    }
    return changes;
}

Poly divide_out_root(Poly p, const Rational &r) {
    Poly factor(std::vector<Rational>{-r, Rational(1)});
    while (!p.is_zero() && p.eval(r) == 0) {
        Poly q, rem;
        Poly::divmod(p, factor, q, rem);
        p = std::move(q);
    }
    return p;
}

} // namespace

int count_real_roots(const Poly &p, const std::optional<Rational> &lo, const std::optional<Rational> &hi) {
    if (p.is_zero()) throw std::domain_error("zero polynomial has infinitely many roots");
    if (p.degree() == 0) return 0;
    // Square-free part.
    Poly g = Poly::gcd(p, p.derivative());
    Poly sf, rem;
    Poly::divmod(p, g, sf, rem);
    if (lo) sf = divide_out_root(sf, *lo);
    if (hi) sf = divide_out_root(sf, *hi);
    if (sf.degree() <= 0) return 0;

    std::vector<Poly> seq{sf, sf.derivative()};
    while (true) {
        Poly q, r;
        Poly::divmod(seq[seq.size() - 2], seq.back(), q, r);
        if (r.is_zero()) break;
        seq.push_back(-r);
    }
    auto changes_at = [&](const std::optional<Rational> &x, bool upper) {
        std::vector<int> signs;
        signs.reserve(seq.size());
        for (const auto &s : seq) signs.push_back(x ? sign_of(s.eval(*x)) : sign_at_infinity(s, upper));
        return sign_changes(signs);
    };
    return changes_at(lo, false) - changes_at(hi, true);
}

// ---------------------------------------------------------------------------
// Exact linear algebra

BigInt bareiss_determinant(IntegerMatrix m) {
    const std::size_t n = m.size();
    if (n == 0) return 1;
    BigInt prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t swap = k + 1;
            while (swap < n && m[swap][k] == 0) ++swap;
            if (swap == n) return 0;
            std::swap(m[k], m[swap]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                BigInt v = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
                m[i][j] = std::move(v);
            }
        }
        prev = m[k][k];
    }
    return sign > 0 ? m[n - 1][n - 1] : BigInt(-m[n - 1][n - 1]);
}

int exact_rank(const RationalMatrix &rows_in) {
    if (rows_in.empty()) return 0;
    const std::size_t cols = rows_in.front().size();
    IntegerMatrix m;
    m.reserve(rows_in.size());
    for (const auto &row : rows_in) {
        BigInt lcm = 1;
        for (const auto &v : row) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), v.get_den_mpz_t());
        std::vector<BigInt> irow;
        irow.reserve(cols);
        for (const auto &v : row) irow.push_back(BigInt(v.get_num() * (lcm / v.get_den())));
        m.push_back(std::move(irow));
    }
    // Bareiss with row pivoting; rank = number of pivots found.
    BigInt prev = 1;
    std::size_t rank = 0;
    const std::size_t rows = m.size();
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t pivot = rank;
        while (pivot < rows && m[pivot][col] == 0) ++pivot;
        if (pivot == rows) continue;
        std::swap(m[rank], m[pivot]);
        for (std::size_t i = rank + 1; i < rows; ++i) {
            for (std::size_t j = col + 1; j < cols; ++j) {
                BigInt v = m[i][j] * m[rank][col] - m[i][col] * m[rank][j];
                mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
                m[i][j] = std::move(v);
            }
            m[i][col] = 0;
        }
        prev = m[rank][col];
        ++rank;
    }
    return static_cast<int>(rank);
}

std::vector<std::vector<Rational>> exact_kernel(const RationalMatrix &rows_in) {
    if (rows_in.empty()) return {};
    RationalMatrix m = rows_in;
    const std::size_t rows = m.size();
    const std::size_t cols = m.front().size();
    std::vector<std::size_t> pivot_cols;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && m[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(m[r], m[p]);
        Rational inv = 1 / m[r][c];
        for (auto &v : m[r]) v *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            Rational f = m[i][c];
            for (std::size_t j = 0; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        pivot_cols.push_back(c);
        ++r;
    }
    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivot_cols) is_pivot[c] = true;
    std::vector<std::vector<Rational>> basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<Rational> v(cols, Rational(0));
        v[free] = 1;
        for (std::size_t i = 0; i < pivot_cols.size(); ++i) v[pivot_cols[i]] = -m[i][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

} // namespace curvedist
