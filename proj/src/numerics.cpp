#include "curvedist/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace curvedist::numerics {

namespace {

struct Rule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

Rule make_rule(int n) {
    Rule r;
    r.nodes.resize(static_cast<std::size_t>(n));
    r.weights.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = pk;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        r.nodes[static_cast<std::size_t>(i)] = x;
        r.weights[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return r;
}

const Rule &rule(int n) {
    static std::mutex mu;
    static std::map<int, Rule> cache;
    std::lock_guard lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, make_rule(n)).first;
    return it->second;
}

double adaptive_step(const std::function<double(double)> &f, double a, double b, double whole, double tol, int depth) {
    double m = 0.5 * (a + b);
    double left = gauss_legendre(f, a, m);
    double right = gauss_legendre(f, m, b);
    if (depth <= 0 || std::abs(left + right - whole) <= tol) return left + right;
    return adaptive_step(f, a, m, left, 0.5 * tol, depth - 1) + adaptive_step(f, m, b, right, 0.5 * tol, depth - 1);
}

} // namespace

double gauss_legendre(const std::function<double(double)> &f, double a, double b, int nodes) {
    const Rule &r = rule(nodes);
    double half = 0.5 * (b - a);
    double mid = 0.5 * (a + b);
    double acc = 0.0;
    for (std::size_t i = 0; i < r.nodes.size(); ++i) acc += r.weights[i] * f(mid + half * r.nodes[i]);
    return acc * half;
}

double adaptive_integrate(const std::function<double(double)> &f, double a, double b, double tol, int max_depth) {
    return adaptive_step(f, a, b, gauss_legendre(f, a, b), tol, max_depth);
}

std::vector<double> fd_weights(const std::vector<double> &x, int order) {
    // Fornberg's recursion, evaluation point 0, updated in place.
    const std::size_t n = x.size();
    const std::size_t m = static_cast<std::size_t>(order);
    if (n == 0 || n - 1 < m) throw std::invalid_argument("not enough stencil nodes for derivative order");
    std::vector<std::vector<double>> c(n, std::vector<double>(m + 1, 0.0));
    c[0][0] = 1.0;
    double c1 = 1.0;
    double c4 = x[0];
    for (std::size_t i = 1; i < n; ++i) {
        const std::size_t mn = std::min(i, m);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = x[i];
        for (std::size_t j = 0; j < i; ++j) {
            const double c3 = x[i] - x[j];
            c2 *= c3;
            if (j == i - 1) {
                for (std::size_t k = mn; k >= 1; --k) c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for (std::size_t k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    std::vector<double> w(n);
    for (std::size_t j = 0; j < n; ++j) w[j] = c[j][m];
    return w;
}

std::vector<double> chebyshev_nodes(double a, double b, int n) {
    std::vector<double> out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        double x = std::cos(std::numbers::pi * (2.0 * (n - 1 - i) + 1.0) / (2.0 * n));
        out[static_cast<std::size_t>(i)] = 0.5 * (a + b) + 0.5 * (b - a) * x;
    }
    return out;
}

namespace series {

Series mul(const Series &a, const Series &b, std::size_t len) {
    Series out(len, 0.0);
    for (std::size_t i = 0; i < std::min(len, a.size()); ++i)
        for (std::size_t j = 0; j < b.size() && i + j < len; ++j) out[i + j] += a[i] * b[j];
    return out;
}

Series sqrt(const Series &a, std::size_t len) {
    Series r(len, 0.0);
    if (a.empty() || a[0] <= 0.0) throw std::domain_error("series sqrt needs a positive constant term");
    r[0] = std::sqrt(a[0]);
    for (std::size_t n = 1; n < len; ++n) {
        double acc = n < a.size() ? a[n] : 0.0;
        for (std::size_t k = 1; k < n; ++k) acc -= r[k] * r[n - k];
        r[n] = acc / (2.0 * r[0]);
    }
    return r;
}

Series compose(const Series &a, const Series &b, std::size_t len) {
    Series out(len, 0.0);
    Series power(len, 0.0);
    power[0] = 1.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        for (std::size_t i = 0; i < len; ++i) out[i] += a[k] * power[i];
        power = mul(power, b, len);
    }
    return out;
}

Series revert(const Series &b, std::size_t len) {
    if (b.size() < 2 || b[1] == 0.0) throw std::domain_error("series reversion needs a nonzero linear term");
    Series u(len, 0.0);
    for (std::size_t n = 1; n < len; ++n) {
        u[n] = 0.0;
        Series c = compose(b, u, n + 1);
        double target = n == 1 ? 1.0 : 0.0;
        u[n] = (target - c[n]) / b[1];
    }
    return u;
}

} // namespace series

} // namespace curvedist::numerics
