#include "curvedist/rigidity.hpp"

#include "curvedist/errors.hpp"
#include "curvedist/numerics.hpp"
#include "curvedist/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace curvedist {

namespace {

void validate_edges(std::vector<Edge> &edges, int n) {
    std::set<Edge> seen;
    for (auto &[u, w] : edges) {
        if (u < 0 || w < 0 || u >= n || w >= n) throw ValidationError("edge endpoint out of range");
        if (u == w) throw ValidationError("self-loop in framework");
        if (u > w) std::swap(u, w);
        if (!seen.emplace(u, w).second) throw ValidationError("duplicate edge in framework");
    }
}

void validate_embedding(const Curve &curve, const Quantity &quantity, const std::vector<double> &params) {
    if (params.empty()) throw ValidationError("framework needs at least one vertex");
    if (quantity.dimension() != curve.dimension()) throw DimensionMismatch("quantity and curve dimensions differ");
    std::vector<double> sorted = params;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw ValidationError("framework vertices must be distinct");
    for (double t : params)
        if (!curve.domain().contains(t)) throw DomainError("framework vertex outside the curve domain");
}

// Minimal forward-mode dual number for first-order limits.
struct Dual {
    double v = 0.0, d = 0.0;
};
Dual operator+(Dual a, Dual b) { return {a.v + b.v, a.d + b.d}; }
Dual operator-(Dual a, Dual b) { return {a.v - b.v, a.d - b.d}; }
Dual operator*(Dual a, Dual b) { return {a.v * b.v, a.v * b.d + a.d * b.v}; }
Dual lift_dual(const Rational &r) { return {r.get_d(), 0.0}; }

struct Point {
    Vec x, v;
};

Point point_at(const Curve &curve, double t) {
    Jet j = detail::jet_unchecked(curve, t, 1);
    return {j[0], j[1]};
}

constexpr double kSingular = 1e-14;
constexpr double kBlend = 1e-7;

double direct_H(const Quantity &q, const Point &a, const Point &b, const Point &t) {
    const Gradient ga = grad_quantity(q, t.x, a.x);
    const Gradient gb = grad_quantity(q, t.x, b.x);
    const double num1 = b.v.dot(gb.dy), num2 = t.v.dot(ga.dx);
    const double den1 = a.v.dot(ga.dy), den2 = t.v.dot(gb.dx);
    if (std::abs(den1) < kSingular || std::abs(den2) < kSingular)
        throw SingularH("H denominator vanishes; the pair is not simple here");
    return (num1 * num2) / (den1 * den2);
}

// Limit as tau -> s of (gamma'(tau).D_X(gamma(tau), gamma(s))) / (w.D_Y(gamma(tau), gamma(s)))
// where w = gamma'(s); both vanish at tau = s.
std::pair<double, double> diagonal_rates(const Curve &curve, const Quantity &q, double s) {
    Jet j = detail::jet_unchecked(curve, s, 2);
    const auto d = static_cast<std::size_t>(j[0].size());
    std::vector<Dual> x(d), v(d), y(d);
    for (std::size_t i = 0; i < d; ++i) {
        x[i] = {j[0][i], j[1][i]};
        v[i] = {j[1][i], j[2][i]};
        y[i] = {j[0][i], 0.0};
    }
    auto [dx, dy] = q.gradient(x, y, lift_dual);
    double rate_x = 0.0, rate_y = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
        rate_x += (v[i] * dx[i]).d;
        rate_y += j[1][i] * dy[i].d;
    }
    return {rate_x, rate_y};
}

double removable_H(const Curve &curve, const Quantity &q, double alpha, double beta, bool at_alpha) {
    const Point a = point_at(curve, alpha), b = point_at(curve, beta);
    if (at_alpha) {
        // tau = alpha: the second numerator and first denominator factors vanish.
        const Gradient g = grad_quantity(q, a.x, b.x);
        const double num1 = b.v.dot(g.dy), den2 = a.v.dot(g.dx);
        auto [rx, ry] = diagonal_rates(curve, q, alpha);
        if (std::abs(den2) < kSingular || std::abs(ry) < kSingular)
            throw SingularH("removable value of H is undefined at tau = alpha");
        return num1 / den2 * (rx / ry);
    }
    // tau = beta: the first numerator and second denominator factors vanish.
    const Gradient g = grad_quantity(q, b.x, a.x);
    const double num2 = b.v.dot(g.dx), den1 = a.v.dot(g.dy);
    auto [rx, ry] = diagonal_rates(curve, q, beta);
    if (std::abs(den1) < kSingular || std::abs(rx) < kSingular)
        throw SingularH("removable value of H is undefined at tau = beta");
    return num2 / den1 * (ry / rx);
}

} // namespace

Framework make_framework(Curve curve, Quantity quantity, std::vector<Edge> edges, std::vector<double> embedding) {
    validate_embedding(curve, quantity, embedding);
    validate_edges(edges, static_cast<int>(embedding.size()));
    const int n = static_cast<int>(embedding.size());
    return Framework{std::move(curve), std::move(quantity), n, std::move(edges), std::move(embedding), std::nullopt};
}

Framework make_framework(Curve curve, Quantity quantity, std::vector<Edge> edges, std::vector<Rational> embedding) {
    std::vector<double> params;
    for (const auto &r : embedding) {
        if (!curve.domain().contains(r)) throw DomainError("framework vertex outside the curve domain");
        params.push_back(to_double(r));
    }
    std::vector<Rational> sorted = embedding;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw ValidationError("framework vertices must be distinct");
    Framework fw = make_framework(std::move(curve), std::move(quantity), std::move(edges), std::move(params));
    fw.exact_embedding = std::move(embedding);
    return fw;
}

std::vector<Edge> complete_graph_edges(int n) {
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
    return edges;
}

std::vector<Edge> complete_bipartite_edges(int left, int right) {
    std::vector<Edge> edges;
    for (int i = 0; i < left; ++i)
        for (int j = 0; j < right; ++j) edges.emplace_back(i, left + j);
    return edges;
}

Eigen::MatrixXd flexibility_matrix(const Framework &fw) {
    std::vector<Point> pts;
    for (double t : fw.embedding) pts.push_back(point_at(fw.curve, t));
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(fw.edges.size()), fw.vertex_count);
    for (std::size_t e = 0; e < fw.edges.size(); ++e) {
        const auto [u, w] = fw.edges[e];
        const Gradient g = grad_quantity(fw.quantity, pts[u].x, pts[w].x);
        m(static_cast<Eigen::Index>(e), u) = pts[u].v.dot(g.dx);
        m(static_cast<Eigen::Index>(e), w) = pts[w].v.dot(g.dy);
    }
    return m;
}

RationalMatrix flexibility_matrix_exact(const Framework &fw) {
    if (!fw.is_exact()) throw ExactnessUnavailable("exact flexibility matrix needs a rational curve and embedding");
    std::vector<ExactJet> jets;
    for (const auto &t : *fw.exact_embedding) jets.push_back(derivative_jet_exact(fw.curve, t, 1));
    RationalMatrix m(fw.edges.size(), std::vector<Rational>(static_cast<std::size_t>(fw.vertex_count), Rational(0)));
    auto dot = [](const ExactPoint &a, const ExactPoint &b) {
        Rational s = 0;
        for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
        return s;
    };
    for (std::size_t e = 0; e < fw.edges.size(); ++e) {
        const auto [u, w] = fw.edges[e];
        auto [dx, dy] = grad_quantity_exact(fw.quantity, jets[u][0], jets[w][0]);
        m[e][u] = dot(jets[u][1], dx);
        m[e][w] = dot(jets[w][1], dy);
    }
    return m;
}

FlexibilityResult infinitesimal_nullity(const Framework &fw, double tol) {
    if (!(tol > 0.0 && tol < 1.0)) throw ValidationError("nullity tolerance must lie in (0, 1)");
    FlexibilityResult r;
    r.rows = static_cast<int>(fw.edges.size());
    r.cols = fw.vertex_count;
    r.tol = tol;
    const Eigen::MatrixXd m = flexibility_matrix(fw);
    int rank = 0;
    if (r.rows > 0) {
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
        const Eigen::VectorXd s = svd.singularValues();
        r.singular_values.assign(s.data(), s.data() + s.size());
        const double smax = s.size() ? s(0) : 0.0;
        for (double v : r.singular_values)
            if (smax > 0.0 && v >= tol * smax) ++rank;
    }
    r.numerical_nullity = r.cols - rank;
    if (fw.is_exact()) {
        const RationalMatrix em = flexibility_matrix_exact(fw);
        r.exact_nullity = r.cols - (em.empty() ? 0 : exact_rank(em));
        if (em.empty()) {
            std::vector<std::vector<Rational>> basis;
            for (int i = 0; i < r.cols; ++i) {
                std::vector<Rational> e(static_cast<std::size_t>(r.cols), Rational(0));
                e[static_cast<std::size_t>(i)] = 1;
                basis.push_back(std::move(e));
            }
            r.exact_kernel = std::move(basis);
        } else {
            r.exact_kernel = exact_kernel(em);
        }
    }
    return r;
}

double eval_H(const Curve &curve, const Quantity &q, double alpha, double beta, double tau) {
    if (alpha == beta) throw ValidationError("H needs alpha != beta");
    for (double t : {alpha, beta, tau})
        if (!curve.domain().contains(t)) throw DomainError("H argument outside the curve domain");
    const double da = tau - alpha, db = tau - beta;
    const bool near_alpha = std::abs(da) <= std::abs(db);
    const double gap = near_alpha ? da : db;
    if (std::abs(gap) >= kBlend) {
        return direct_H(q, point_at(curve, alpha), point_at(curve, beta), point_at(curve, tau));
    }
    const double limit = removable_H(curve, q, alpha, beta, near_alpha);
    if (gap == 0.0) return limit;
    const double anchor = (near_alpha ? alpha : beta) + std::copysign(kBlend, gap);
    const double far = direct_H(q, point_at(curve, alpha), point_at(curve, beta), point_at(curve, anchor));
    const double w = std::abs(gap) / kBlend;
    return (1.0 - w) * limit + w * far;
}

Interval default_degeneracy_window(const Curve &curve) {
    const Interval w = curve.domain().clipped(4.0);
    const double mid = 0.5 * (w.lo() + w.hi()), quarter = 0.125 * (w.hi() - w.lo());
    return Interval(mid - quarter, mid + quarter);
}

DegeneracyReport scan_T_degeneracy(const Curve &curve, const Quantity &q, const DegeneracyOptions &opts) {
    if (opts.pairs < 8) throw ValidationError("degeneracy scan needs at least 8 pairs");
    if (opts.tau_grid < 64) throw ValidationError("degeneracy scan needs a tau grid of at least 64");
    if (!(opts.tol > 0.0)) throw ValidationError("tolerance must be positive");
    DegeneracyReport report;
    report.window = opts.window ? *opts.window : default_degeneracy_window(curve);
    const double lo = report.window.lo(), width = report.window.hi() - lo;
    if (!(width > 0.0) || !std::isfinite(width)) throw ValidationError("degeneracy window must be finite and non-empty");

    // Low-discrepancy pair placement inside the window.
    std::vector<std::pair<double, double>> pairs;
    for (int i = 0; i < opts.pairs; ++i) {
        double u = std::fmod(0.1 + 0.6180339887498949 * i, 1.0);
        double v = std::fmod(0.6 + 0.7548776662466927 * i, 1.0);
        if (std::abs(u - v) < 0.05) v = std::fmod(v + 0.37, 1.0);
        pairs.emplace_back(lo + width * (0.05 + 0.9 * u), lo + width * (0.05 + 0.9 * v));
    }
    const std::vector<double> taus = numerics::chebyshev_nodes(lo, report.window.hi(), opts.tau_grid);

    struct PairScan {
        double variation = 0.0;
        DegeneracyWitness witness;
        int sign_changes = 0;
        int skipped = 0;
    };
    std::vector<PairScan> scans(pairs.size());
    parallel_for(pairs.size(), [&](std::size_t k) {
        auto &scan = scans[k];
        const auto [alpha, beta] = pairs[k];
        std::vector<std::pair<double, double>> values;
        for (double tau : taus) {
            try {
                values.emplace_back(tau, eval_H(curve, q, alpha, beta, tau));
            } catch (const SingularH &) {
                ++scan.skipped;
            }
        }
        scan.witness.alpha = alpha;
        scan.witness.beta = beta;
        if (values.size() < 2) return;
        std::sort(values.begin(), values.end());
        auto [mn, mx] = std::minmax_element(values.begin(), values.end(),
                                            [](const auto &a, const auto &b) { return a.second < b.second; });
        double scale = 0.0;
        for (const auto &v : values) scale = std::max(scale, std::abs(v.second));
        scan.variation = scale > 0.0 ? (mx->second - mn->second) / scale : 0.0;
        scan.witness.tau1 = mn->first;
        scan.witness.h1 = mn->second;
        scan.witness.tau2 = mx->first;
        scan.witness.h2 = mx->second;
        int last_sign = 0;
        for (std::size_t i = 1; i < values.size(); ++i) {
            const double diff = values[i].second - values[i - 1].second;
            if (std::abs(diff) <= opts.tol * scale) continue;
            const int sign = diff > 0 ? 1 : -1;
            if (last_sign != 0 && sign != last_sign) ++scan.sign_changes;
            last_sign = sign;
        }
    });
    std::size_t best = 0;
    for (std::size_t k = 0; k < scans.size(); ++k) {
        report.skipped_points += scans[k].skipped;
        if (scans[k].variation > scans[best].variation) best = k;
    }
    report.pairs_scanned = static_cast<int>(pairs.size());
    report.max_H_variation = scans[best].variation;
    report.is_degenerate_candidate = report.max_H_variation < opts.tol;
    report.sign_changes = scans[best].sign_changes;
    if (!report.is_degenerate_candidate) report.witness = scans[best].witness;
    return report;
}

} // namespace curvedist
