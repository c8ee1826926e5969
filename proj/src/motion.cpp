#include "curvedist/motion.hpp"

#include "curvedist/errors.hpp"
#include "curvedist/numerics.hpp"
#include "curvedist/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace curvedist {

std::string to_string(TraceStatus status) {
    switch (status) {
    case TraceStatus::Completed: return "completed";
    case TraceStatus::NewtonDivergence: return "newton_divergence";
    case TraceStatus::DomainExit: return "domain_exit";
    }
    return "unknown";
}

namespace {

// One propagated vertex: solved from the constraint on edges[edge] with its
// anchor already moved.
struct PropagationStep {
    int vertex;
    int anchor;
    std::size_t edge;
};

enum class SolveOutcome { Ok, Diverged, LeftDomain };

double edge_value(const Curve &curve, const Quantity &q, const Edge &e, const std::vector<double> &params) {
    return eval_quantity(q, detail::jet_unchecked(curve, params[e.first], 0)[0],
                         detail::jet_unchecked(curve, params[e.second], 0)[0]);
}

double relative_gap(double value, double target) {
    return std::abs(value - target) / std::max(std::abs(target), 1e-300);
}

SolveOutcome solve_vertex(const Curve &curve, const Quantity &q, const Edge &e, int vertex, double target,
                          std::vector<double> &params, NewtonStats &stats) {
    const bool moving_second = e.second == vertex;
    const Vec anchor = detail::jet_unchecked(curve, params[moving_second ? e.first : e.second], 0)[0];
    double s = params[vertex];
    ++stats.solves;
    for (int it = 0; it < 60; ++it) {
        ++stats.iterations;
        const Jet j = detail::jet_unchecked(curve, s, 1);
        const double value = moving_second ? eval_quantity(q, anchor, j[0]) : eval_quantity(q, j[0], anchor);
        if (std::abs(value - target) < 1e-12 * std::max(std::abs(target), 1e-300)) {
            params[vertex] = s;
            return SolveOutcome::Ok;
        }
        const Gradient g = moving_second ? grad_quantity(q, anchor, j[0]) : grad_quantity(q, j[0], anchor);
        const double slope = j[1].dot(moving_second ? g.dy : g.dx);
        if (slope == 0.0 || !std::isfinite(slope)) break;
        const double delta = (value - target) / slope;
        // A large jump would leave the local branch of the constraint.
        if (std::abs(delta) > 0.25) break;
        s -= delta;
        if (!curve.domain().contains(s)) return SolveOutcome::LeftDomain;
    }
    return SolveOutcome::Diverged;
}

MotionTrace run_trace(const Curve &curve, const Quantity &q, std::vector<double> params, std::vector<Edge> edges,
                      int driver, const std::vector<PropagationStep> &plan, double step, int steps) {
    if (!(std::isfinite(step) && step != 0.0)) throw ValidationError("motion step must be finite and non-zero");
    if (steps < 0) throw ValidationError("step count must be non-negative");
    MotionTrace trace;
    trace.edges = std::move(edges);
    for (const auto &e : trace.edges) trace.edge_targets.push_back(edge_value(curve, q, e, params));
    trace.edge_drift.assign(trace.edges.size(), 0.0);
    trace.defining.assign(trace.edges.size(), false);
    for (const auto &p : plan) trace.defining[p.edge] = true;
    trace.paths.assign(params.size(), {});
    auto record = [&] {
        trace.steps.push_back(params[driver]);
        for (std::size_t v = 0; v < params.size(); ++v) trace.paths[v].push_back(params[v]);
        for (std::size_t e = 0; e < trace.edges.size(); ++e)
            trace.edge_drift[e] =
                std::max(trace.edge_drift[e], relative_gap(edge_value(curve, q, trace.edges[e], params), trace.edge_targets[e]));
    };
    record();

    for (int i = 0; i < steps; ++i) {
        const double start = params[driver];
        SolveOutcome last = SolveOutcome::Ok;
        bool advanced = false;
        for (int halving = 0; halving <= 10 && !advanced; ++halving) {
            if (halving > 0) ++trace.newton.halvings;
            std::vector<double> trial = params;
            const long parts = 1L << halving;
            bool ok = true;
            for (long part = 1; part <= parts && ok; ++part) {
                trial[driver] = start + step * static_cast<double>(part) / static_cast<double>(parts);
                if (!curve.domain().contains(trial[driver])) {
                    last = SolveOutcome::LeftDomain;
                    ok = false;
                    break;
                }
                for (const auto &p : plan) {
                    last = solve_vertex(curve, q, trace.edges[p.edge], p.vertex, trace.edge_targets[p.edge], trial, trace.newton);
                    if (last != SolveOutcome::Ok) {
                        ++trace.newton.failures;
                        ok = false;
                        break;
                    }
                }
            }
            if (ok) {
                params = std::move(trial);
                advanced = true;
            } else if (last == SolveOutcome::LeftDomain && halving == 0 && !curve.domain().contains(start + step)) {
                break;
            }
        }
        if (!advanced) {
            trace.status = last == SolveOutcome::LeftDomain ? TraceStatus::DomainExit : TraceStatus::NewtonDivergence;
            trace.message = "stopped before step " + std::to_string(i + 1) + " of " + std::to_string(steps);
            break;
        }
        record();
    }
    for (std::size_t e = 0; e < trace.edges.size(); ++e)
        if (!trace.defining[e]) trace.max_drift = std::max(trace.max_drift, trace.edge_drift[e]);
    return trace;
}

} // namespace

MotionTrace trace_triangle_motion(const Curve &curve, const Quantity &q, std::array<double, 3> initial, double step,
                                  int steps) {
    const auto [alpha, tau, beta] = initial;
    if (alpha == tau || alpha == beta || tau == beta) throw ValidationError("triangle vertices must be distinct");
    if (q.dimension() != curve.dimension()) throw DimensionMismatch("quantity and curve dimensions differ");
    for (double t : initial)
        if (!curve.domain().contains(t)) throw DomainError("triangle vertex outside the curve domain");
    // Edges: d1 = D(tau, alpha), d3 = D(alpha, beta), d2 = D(tau, beta).
    std::vector<Edge> edges{{1, 0}, {0, 2}, {1, 2}};
    std::vector<PropagationStep> plan{{2, 0, 1}, {1, 0, 0}};
    return run_trace(curve, q, {alpha, tau, beta}, std::move(edges), 0, plan, step, steps);
}

MotionTrace trace_framework_motion(const Framework &fw, int driver, double step, int steps) {
    if (driver < 0 || driver >= fw.vertex_count) throw ValidationError("driver vertex out of range");
    std::vector<std::vector<std::pair<int, std::size_t>>> adjacency(static_cast<std::size_t>(fw.vertex_count));
    for (std::size_t e = 0; e < fw.edges.size(); ++e) {
        adjacency[fw.edges[e].first].emplace_back(fw.edges[e].second, e);
        adjacency[fw.edges[e].second].emplace_back(fw.edges[e].first, e);
    }
    std::vector<bool> seen(adjacency.size(), false);
    std::vector<PropagationStep> plan;
    std::queue<int> frontier;
    frontier.push(driver);
    seen[driver] = true;
    while (!frontier.empty()) {
        const int u = frontier.front();
        frontier.pop();
        for (const auto &[w, e] : adjacency[u]) {
            if (seen[w]) continue;
            seen[w] = true;
            plan.push_back({w, u, e});
            frontier.push(w);
        }
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end())
        throw DisconnectedFramework("framework is not connected to the driver vertex");
    return run_trace(fw.curve, fw.quantity, fw.embedding, fw.edges, driver, plan, step, steps);
}

DerivativeNormProfile derivative_norm_profile(const Curve &curve, int max_order, int samples, double h, double helix_tol) {
    if (max_order < 1 || max_order > 5) throw ValidationError("profile order must lie in 1..5");
    if (samples < 2) throw ValidationError("profile needs at least 2 samples");
    if (!(h > 0.0)) throw ValidationError("finite-difference step must be positive");
    if (curve.max_jet_order() < 1) throw JetOrderError("curve provides no derivatives");
    const Curve base = curve.domain().is_finite() ? curve : curve.restricted(curve.domain().clipped(4.0));
    const Curve sigma = arc_length_reparametrize(base);
    DerivativeNormProfile prof;
    prof.length = sigma.domain().hi();
    prof.step = h;

    // Higher orders amplify rounding by h^-k, so their steps grow.
    static constexpr double kStepScale[] = {1.0, 1.0, 1.0, 10.0, 30.0, 80.0};
    auto step_for = [&](int k) { return h * kStepScale[k]; };
    auto half_width = [](int k) { return (k + 1) / 2 + 1; };
    double margin = 0.0;
    for (int k = 1; k <= max_order; ++k) margin = std::max(margin, (half_width(k) + 1) * step_for(k));
    if (2.0 * margin >= prof.length) throw StepTooSmall("curve is too short for the finite-difference stencils");
    for (int i = 0; i < samples; ++i)
        prof.samples.push_back(margin + (prof.length - 2.0 * margin) * i / (samples - 1));
    for (int k = 1; k <= max_order; ++k) prof.orders.push_back(k);

    std::vector<std::vector<double>> weights(static_cast<std::size_t>(max_order) + 1);
    for (int k = 1; k <= max_order; ++k) {
        std::vector<double> offsets;
        for (int j = -half_width(k); j <= half_width(k); ++j) offsets.push_back(j);
        weights[k] = numerics::fd_weights(offsets, k);
    }
    prof.norms.assign(static_cast<std::size_t>(max_order), std::vector<double>(prof.samples.size(), 0.0));
    parallel_for(prof.samples.size(), [&](std::size_t i) {
        const double s = prof.samples[i];
        for (int k = 1; k <= max_order; ++k) {
            const int p = half_width(k);
            auto stencil = [&](double hk) {
                Vec acc = Vec::Zero(sigma.dimension());
                for (int j = -p; j <= p; ++j) acc += weights[k][j + p] * evaluate(sigma, s + j * hk);
                return Vec(acc / std::pow(hk, k));
            };
            const double hk = step_for(k);
            const Vec n1 = stencil(hk), n2 = stencil(hk / 2), n4 = stencil(hk / 4);
            const Vec coarse = (16.0 * n2 - n1) / 15.0;
            const double e1 = (n1 - n2).norm(), e2 = (n2 - n4).norm();
            const double floor = 1e-5 * std::max(1.0, coarse.norm());
            if (e2 > e1 && e2 > floor)
                throw StepTooSmall("finite-difference estimates of order " + std::to_string(k) +
                                   " do not converge under step halving");
            prof.norms[k - 1][i] = coarse.norm();
        }
    });
    prof.helix_candidate = true;
    for (int k = 1; k <= max_order; ++k) {
        const auto &row = prof.norms[k - 1];
        auto [mn, mx] = std::minmax_element(row.begin(), row.end());
        double mean = 0.0;
        for (double v : row) mean += v / static_cast<double>(row.size());
        const double var = mean > 0.0 ? (*mx - *mn) / mean : (*mx - *mn);
        prof.variation.push_back(var);
        if (k >= 2 && !(var < helix_tol)) prof.helix_candidate = false;
    }
    return prof;
}

std::optional<std::pair<long, long>> rational_reconstruction(double x, long max_den, double tol) {
    if (!std::isfinite(x)) return std::nullopt;
    long h_prev = 1, h_prev2 = 0, k_prev = 0, k_prev2 = 1;
    double r = x;
    for (int it = 0; it < 64; ++it) {
        const double a = std::floor(r);
        if (std::abs(a) > 1e18) break;
        const long ai = static_cast<long>(a);
        const long h = ai * h_prev + h_prev2;
        const long k = ai * k_prev + k_prev2;
        if (k > max_den) break;
        const double approx = static_cast<double>(h) / static_cast<double>(k);
        if (std::abs(x - approx) < tol * std::abs(x) || x == approx) return std::make_pair(h, k);
        h_prev2 = h_prev;
        h_prev = h;
        k_prev2 = k_prev;
        k_prev = k;
        const double frac = r - a;
        if (frac == 0.0) break;
        r = 1.0 / frac;
    }
    return std::nullopt;
}

HelixClassification classify_helix(const HelixCurve &helix, long max_den, double tol) {
    if (max_den < 2) throw ValidationError("denominator bound must be at least 2");
    HelixClassification c;
    c.k = static_cast<int>(helix.radii.size());
    c.l = std::any_of(helix.drift.begin(), helix.drift.end(), [](double w) { return w != 0.0; }) ? 1 : 0;
    if (c.k == 0) {
        c.is_algebraic = true;
        c.reason = "no rotational part: a straight line";
        return c;
    }
    if (c.l > 0) {
        c.is_algebraic = false;
        c.reason = "rotation combined with linear drift";
        return c;
    }
    c.is_algebraic = true;
    const double base = helix.frequencies[0];
    for (int i = 1; i < c.k; ++i) {
        RatioCertificate cert;
        cert.index = i;
        cert.ratio = helix.frequencies[static_cast<std::size_t>(i)] / base;
        if (auto pq = rational_reconstruction(cert.ratio, max_den, tol)) {
            cert.found = true;
            cert.p = pq->first;
            cert.q = pq->second;
        } else {
            c.is_algebraic = false;
        }
        c.certificates.push_back(cert);
    }
    c.reason = c.is_algebraic ? "closed orbit: all frequency ratios rational" : "irrational frequency ratio";
    return c;
}

} // namespace curvedist
