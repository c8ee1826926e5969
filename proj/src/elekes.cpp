#include "curvedist/elekes.hpp"

#include "curvedist/errors.hpp"
#include "curvedist/numerics.hpp"
#include "curvedist/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

namespace curvedist {

namespace {

double norm2(const Point2 &p) { return std::hypot(p[0], p[1]); }

constexpr double kMergeRadius = 1e-5;

void require_distinct(double p, double q) {
    if (p == q) throw ValidationError("Elekes curve needs distinct base parameters");
}

Interval search_window(const ElekesCurve &e, const std::optional<Interval> &window) {
    return window ? *window : e.base.domain().clipped(4.0);
}

// Parameter s minimising |xi(s) - target| and the residual there.
std::pair<double, double> closest_parameter(const ElekesCurve &e, const Point2 &target, const Interval &w, int coarse) {
    double best_s = 0.0, best_r = std::numeric_limits<double>::infinity();
    const double h = (w.hi() - w.lo()) / coarse;
    for (int i = 0; i < coarse; ++i) {
        const double s = w.lo() + (i + 0.5) * h;
        auto v = eval_elekes(e, s);
        const double r = std::hypot(v[0] - target[0], v[1] - target[1]);
        if (r < best_r) {
            best_r = r;
            best_s = s;
        }
    }
    double s = best_s;
    for (int it = 0; it < 40; ++it) {
        auto v = eval_elekes(e, s);
        auto j = eval_elekes_velocity(e, s);
        const double rx = v[0] - target[0], ry = v[1] - target[1];
        const double jj = j[0] * j[0] + j[1] * j[1];
        if (jj == 0.0) break;
        double step = (j[0] * rx + j[1] * ry) / jj;
        double next = std::clamp(s - step, w.lo() + 1e-12 * (w.hi() - w.lo()), w.hi() - 1e-12 * (w.hi() - w.lo()));
        if (std::abs(next - s) <= 1e-16 * std::max(1.0, std::abs(s))) {
            s = next;
            break;
        }
        s = next;
    }
    auto v = eval_elekes(e, s);
    return {s, std::hypot(v[0] - target[0], v[1] - target[1])};
}

bool lies_on(const ElekesCurve &sampled, const ElekesCurve &other, const Interval &w, double tol) {
    int bound = std::max(sampled.degree_bound(), other.degree_bound());
    if (bound == 0) bound = 8;
    for (double t : numerics::chebyshev_nodes(w.lo(), w.hi(), 2 * bound + 1)) {
        auto p = eval_elekes(sampled, t);
        if (closest_parameter(other, p, w, 128).second > tol * std::max(1.0, norm2(p))) return false;
    }
    return true;
}

} // namespace

int ElekesCurve::degree_bound() const {
    if (!base.is_rational()) return 0;
    return quantity.degree() * base.rational().degree;
}

ElekesCurve make_elekes_curve(const Curve &base, const Quantity &quantity, double p, double q) {
    require_distinct(p, q);
    if (quantity.dimension() != base.dimension()) throw DimensionMismatch("quantity and curve dimensions differ");
    ElekesCurve e{base, quantity, p, q, std::nullopt, std::nullopt, evaluate(base, p), evaluate(base, q), std::nullopt, std::nullopt};
    return e;
}

ElekesCurve make_elekes_curve(const Curve &base, const Quantity &quantity, const Rational &p, const Rational &q) {
    if (p == q) throw ValidationError("Elekes curve needs distinct base parameters");
    ElekesCurve e = make_elekes_curve(base, quantity, to_double(p), to_double(q));
    e.p_exact = p;
    e.q_exact = q;
    if (base.is_rational()) {
        const auto &coords = base.rational().coords;
        std::vector<RationalFunction> pc, qc;
        for (const auto &v : evaluate_exact(base, p)) pc.push_back(RationalFunction::constant(v));
        for (const auto &v : evaluate_exact(base, q)) qc.push_back(RationalFunction::constant(v));
        e.components = std::array<RationalFunction, 2>{eval_quantity_symbolic(quantity, coords, pc),
                                                       eval_quantity_symbolic(quantity, coords, qc)};
    }
    return e;
}

ElekesCurve with_implicit(ElekesCurve e) {
    if (!e.components) throw ExactnessUnavailable("implicit form needs rational Elekes components");
    if (!e.implicit) e.implicit = implicitize_rational((*e.components)[0], (*e.components)[1]);
    return e;
}

Point2 eval_elekes(const ElekesCurve &e, double t) {
    Vec x = detail::jet_unchecked(e.base, t, 0)[0];
    return {eval_quantity(e.quantity, x, e.p_point), eval_quantity(e.quantity, x, e.q_point)};
}

std::array<Rational, 2> eval_elekes_exact(const ElekesCurve &e, const Rational &t) {
    if (!e.components) throw ExactnessUnavailable("exact Elekes evaluation needs rational components");
    if (!e.base.domain().contains(t)) throw DomainError("parameter outside the base domain");
    return {(*e.components)[0].eval(t), (*e.components)[1].eval(t)};
}

std::array<Rational, 2> eval_elekes_direct(const ElekesCurve &e, const Rational &t) {
    if (!e.p_exact || !e.q_exact) throw ExactnessUnavailable("exact Elekes evaluation needs rational p and q");
    auto x = evaluate_exact(e.base, t);
    return {eval_quantity_exact(e.quantity, x, evaluate_exact(e.base, *e.p_exact)),
            eval_quantity_exact(e.quantity, x, evaluate_exact(e.base, *e.q_exact))};
}

Point2 eval_elekes_velocity(const ElekesCurve &e, double t) {
    Jet jet = detail::jet_unchecked(e.base, t, 1);
    return {jet[1].dot(grad_quantity(e.quantity, jet[0], e.p_point).dx),
            jet[1].dot(grad_quantity(e.quantity, jet[0], e.q_point).dx)};
}

bool fingerprint_same_curve(const ElekesCurve &a, const ElekesCurve &b, const Interval &window, double tol) {
    return lies_on(a, b, window, tol) && lies_on(b, a, window, tol);
}

IntersectionReport intersect_elekes_pair(const ElekesCurve &a, const ElekesCurve &b, const IntersectionOptions &opts) {
    if (a.p_param == b.p_param && a.q_param == b.q_param)
        throw ValidationError("intersect_elekes_pair needs two different (p, q) pairs");
    if (opts.grid < 2) throw ValidationError("intersection grid needs n >= 2");
    IntersectionReport report;
    const Interval w = search_window(a, opts.window);

    if (a.is_rational() && b.is_rational()) {
        const BiPoly ga = a.implicit ? *a.implicit : with_implicit(a).implicit.value();
        const BiPoly gb = b.implicit ? *b.implicit : with_implicit(b).implicit.value();
        report.exact_same_check = true;
        report.same_algebraic_curve = ga == gb;
    } else {
        report.same_algebraic_curve = fingerprint_same_curve(a, b, w, opts.tol);
    }
    if (report.same_algebraic_curve) return report;

    const auto n = static_cast<std::size_t>(opts.grid);
    const double h = (w.hi() - w.lo()) / static_cast<double>(n);
    std::vector<std::vector<Point2>> found(n);
    std::vector<int> failures(n, 0);
    parallel_for(n, [&](std::size_t i) {
        for (std::size_t j = 0; j < n; ++j) {
            double t = w.lo() + (static_cast<double>(i) + 0.5) * h;
            double s = w.lo() + (static_cast<double>(j) + 0.5) * h;
            bool converged = false;
            for (int it = 0; it < 25; ++it) {
                auto fa = eval_elekes(a, t), fb = eval_elekes(b, s);
                const double rx = fa[0] - fb[0], ry = fa[1] - fb[1];
                const double scale = std::max(1.0, norm2(fa));
                if (std::hypot(rx, ry) <= 1e-13 * scale) {
                    converged = true;
                    break;
                }
                auto va = eval_elekes_velocity(a, t), vb = eval_elekes_velocity(b, s);
                // J = [va, -vb]; solve J (dt, ds) = r.
                const double det = -va[0] * vb[1] + vb[0] * va[1];
                if (std::abs(det) < 1e-300) break;
                const double dt = (-rx * vb[1] + vb[0] * ry) / det;
                const double ds = (va[0] * ry - va[1] * rx) / det;
                t -= dt;
                s -= ds;
                if (!w.contains(t) || !w.contains(s) || !std::isfinite(t) || !std::isfinite(s)) break;
            }
            if (converged)
                found[i].push_back(eval_elekes(a, t));
            else
                ++failures[i];
        }
    });
    // Tangential intersections only converge to about the square root of the
    // residual tolerance, so roots within the merge radius of a kept root are dropped.
    const double radius = std::max(opts.tol, kMergeRadius);
    for (std::size_t i = 0; i < n; ++i) {
        report.unrefined_cells += failures[i];
        for (const auto &p : found[i]) {
            const bool dup = std::any_of(report.points.begin(), report.points.end(), [&](const Point2 &q) {
                return std::hypot(p[0] - q[0], p[1] - q[1]) <= radius * std::max({1.0, norm2(p), norm2(q)});
            });
            if (!dup) report.points.push_back(p);
        }
    }
    std::sort(report.points.begin(), report.points.end());
    return report;
}

IncidenceReport verify_incidence_invariant(const ParamPointSet &pset, const Quantity &q) {
    const std::size_t n = pset.size();
    if (n < 3) throw ValidationError("incidence check needs |P| >= 3");
    IncidenceReport report;
    report.exact = pset.curve.is_rational() && pset.exact.has_value();
    report.min_incidences = std::numeric_limits<std::size_t>::max();

    struct RowResult {
        std::size_t checked = 0;
        std::vector<IncidenceFailure> failures;
        std::size_t min_inc = std::numeric_limits<std::size_t>::max();
        std::size_t max_inc = 0;
    };
    std::vector<RowResult> rows(n);
    if (report.exact) {
        const auto &params = *pset.exact;
        std::vector<ExactPoint> pts(n);
        for (std::size_t i = 0; i < n; ++i) pts[i] = evaluate_exact(pset.curve, params[i]);
        parallel_for(n, [&](std::size_t ip) {
            auto &row = rows[ip];
            for (std::size_t iq = 0; iq < n; ++iq) {
                if (iq == ip) continue;
                ElekesCurve e = make_elekes_curve(pset.curve, q, params[ip], params[iq]);
                std::set<std::pair<Rational, Rational>> product_points;
                for (std::size_t r = 0; r < n; ++r) {
                    if (r == ip || r == iq) continue;
                    ++row.checked;
                    auto lhs = eval_elekes_exact(e, params[r]);
                    Rational dp = eval_quantity_exact(q, pts[r], pts[ip]);
                    Rational dq = eval_quantity_exact(q, pts[r], pts[iq]);
                    if (lhs[0] != dp || lhs[1] != dq)
                        row.failures.push_back({ip, iq, r, "xi = (" + format_rational(lhs[0]) + ", " + format_rational(lhs[1]) +
                                                               ") vs (" + format_rational(dp) + ", " + format_rational(dq) + ")"});
                    product_points.emplace(dp, dq);
                }
                row.min_inc = std::min(row.min_inc, product_points.size());
                row.max_inc = std::max(row.max_inc, product_points.size());
            }
        });
    } else {
        std::vector<Vec> pts(n);
        for (std::size_t i = 0; i < n; ++i) pts[i] = evaluate(pset.curve, pset.params[i]);
        parallel_for(n, [&](std::size_t ip) {
            auto &row = rows[ip];
            for (std::size_t iq = 0; iq < n; ++iq) {
                if (iq == ip) continue;
                ElekesCurve e = make_elekes_curve(pset.curve, q, pset.params[ip], pset.params[iq]);
                std::set<std::pair<double, double>> product_points;
                for (std::size_t r = 0; r < n; ++r) {
                    if (r == ip || r == iq) continue;
                    ++row.checked;
                    auto lhs = eval_elekes(e, pset.params[r]);
                    const double dp = eval_quantity(q, pts[r], pts[ip]);
                    const double dq = eval_quantity(q, pts[r], pts[iq]);
                    if (std::abs(lhs[0] - dp) > 1e-12 * std::max(1.0, std::abs(dp)) ||
                        std::abs(lhs[1] - dq) > 1e-12 * std::max(1.0, std::abs(dq)))
                        row.failures.push_back({ip, iq, r, "floating mismatch"});
                    product_points.emplace(dp, dq);
                }
                row.min_inc = std::min(row.min_inc, product_points.size());
                row.max_inc = std::max(row.max_inc, product_points.size());
            }
        });
    }
    for (auto &row : rows) {
        report.checked += row.checked;
        report.failures.insert(report.failures.end(), row.failures.begin(), row.failures.end());
        report.min_incidences = std::min(report.min_incidences, row.min_inc);
        report.max_incidences = std::max(report.max_incidences, row.max_inc);
    }
    return report;
}

AdmissibilityReport admissibility_scan(const ParamPointSet &pset, const Quantity &q, const AdmissibilityOptions &opts) {
    AdmissibilityReport report;
    const std::size_t n = pset.size();
    if (opts.sample_pairs < 0) throw ValidationError("sample pair count must be non-negative");
    if (opts.sample_pairs == 0 || n < 2) return report;

    const bool exact = pset.curve.is_rational() && pset.exact.has_value();
    std::vector<ElekesCurve> curves;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            curves.push_back(exact ? make_elekes_curve(pset.curve, q, (*pset.exact)[i], (*pset.exact)[j])
                                   : make_elekes_curve(pset.curve, q, pset.params[i], pset.params[j]));
        }
    const std::size_t nc = curves.size();
    report.curves = nc;
    if (exact) parallel_for(nc, [&](std::size_t i) { curves[i] = with_implicit(std::move(curves[i])); });
    const Interval window = opts.window ? *opts.window : pset.curve.domain().clipped(4.0);

    // Classes of curves sharing one algebraic curve.
    std::vector<std::size_t> parent(nc);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    if (exact) {
        std::map<std::string, std::size_t> first_of;
        for (std::size_t i = 0; i < nc; ++i) {
            auto [it, inserted] = first_of.emplace(curves[i].implicit->to_string(), i);
            if (!inserted) parent[find(i)] = find(it->second);
        }
    } else {
        std::vector<std::vector<std::size_t>> matches(nc);
        parallel_for(nc, [&](std::size_t i) {
            for (std::size_t j = i + 1; j < nc; ++j)
                if (fingerprint_same_curve(curves[i], curves[j], window, opts.tol)) matches[i].push_back(j);
        });
        for (std::size_t i = 0; i < nc; ++i)
            for (auto j : matches[i]) parent[find(j)] = find(i);
    }
    std::map<std::size_t, std::size_t> class_size;
    for (std::size_t i = 0; i < nc; ++i) ++class_size[find(i)];
    for (const auto &[root, size] : class_size) report.duplicate_curve_classes.push_back(size);
    std::sort(report.duplicate_curve_classes.rbegin(), report.duplicate_curve_classes.rend());
    report.exact_classes = exact;

    // Sample unordered pairs of distinct curves.
    const std::size_t total = nc * (nc - 1) / 2;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    if (static_cast<std::size_t>(opts.sample_pairs) >= total) {
        for (std::size_t i = 0; i < nc; ++i)
            for (std::size_t j = i + 1; j < nc; ++j) pairs.emplace_back(i, j);
    } else {
        std::mt19937_64 rng(opts.seed);
        std::uniform_int_distribution<std::size_t> pick(0, nc - 1);
        std::set<std::pair<std::size_t, std::size_t>> chosen;
        while (chosen.size() < static_cast<std::size_t>(opts.sample_pairs)) {
            std::size_t i = pick(rng), j = pick(rng);
            if (i == j) continue;
            if (chosen.emplace(std::min(i, j), std::max(i, j)).second) pairs.emplace_back(std::min(i, j), std::max(i, j));
        }
    }
    std::vector<IntersectionReport> results(pairs.size());
    IntersectionOptions iopts{opts.grid, opts.tol, window};
    parallel_for(pairs.size(), [&](std::size_t k) {
        results[k] = intersect_elekes_pair(curves[pairs[k].first], curves[pairs[k].second], iopts);
    });
    for (const auto &r : results) {
        ++report.pairs_checked;
        report.unrefined_cells += r.unrefined_cells;
        if (r.same_algebraic_curve) {
            ++report.same_curve_pairs;
            continue;
        }
        const int count = static_cast<int>(r.points.size());
        report.max_pairwise_intersections = std::max(report.max_pairwise_intersections, count);
        ++report.histogram[count];
    }
    return report;
}

} // namespace curvedist
