#pragma once

// Continuation of finite motions of frameworks along a curve, and the
// derivative-norm and structural tests for generalized helices.

#include "curvedist/curve.hpp"
#include "curvedist/quantity.hpp"
#include "curvedist/rigidity.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace curvedist {

enum class TraceStatus { Completed, NewtonDivergence, DomainExit };
std::string to_string(TraceStatus status);

struct NewtonStats {
    long iterations = 0;
    long solves = 0;
    long failures = 0;
    long halvings = 0;
};

struct MotionTrace {
    std::vector<double> steps;
    /// paths[v][i] is the parameter of vertex v at step i.
    std::vector<std::vector<double>> paths;
    std::vector<Edge> edges;
    std::vector<double> edge_targets;
    /// Max relative |D - D(0)| per edge over all recorded steps.
    std::vector<double> edge_drift;
    /// True for the edges solved for during propagation.
    std::vector<bool> defining;
    /// Largest drift over the monitored (non-defining) edges.
    double max_drift = 0.0;
    NewtonStats newton;
    TraceStatus status = TraceStatus::Completed;
    std::string message;
};

/// Vertices (alpha, tau, beta) = 0, 1, 2; alpha drives, beta keeps
/// D(alpha, beta), tau keeps D(tau, alpha), and D(tau, beta) is monitored.
MotionTrace trace_triangle_motion(const Curve &curve, const Quantity &q, std::array<double, 3> initial, double step,
                                  int steps);

/// Propagates along BFS first edges from the driver; all other edges are monitored.
MotionTrace trace_framework_motion(const Framework &fw, int driver, double step, int steps);

struct DerivativeNormProfile {
    std::vector<int> orders;
    std::vector<double> samples;
    /// norms[k - 1][i] = |sigma^(k)(samples[i])|.
    std::vector<std::vector<double>> norms;
    std::vector<double> variation;
    double length = 0.0;
    double step = 0.0;
    bool helix_candidate = false;
};

/// Finite-difference norms of sigma^(k) on the arc-length reparametrization.
/// Order k uses a 4th-order central stencil with one Richardson step. Orders
/// 1 and 2 use step h; orders 3, 4, 5 use 10h, 30h, 80h. Unbounded domains
/// are clipped to [-4, 4] first. StepTooSmall is raised when halving the
/// step again moves the estimate more than the previous halving did.
DerivativeNormProfile derivative_norm_profile(const Curve &curve, int max_order = 4, int samples = 64, double h = 1e-3,
                                              double helix_tol = 1e-4);

struct RatioCertificate {
    int index = 0;
    double ratio = 0.0;
    bool found = false;
    long p = 0;
    long q = 0;
};

struct HelixClassification {
    bool is_generalized = true;
    bool is_algebraic = false;
    int k = 0;
    int l = 0;
    std::vector<RatioCertificate> certificates;
    std::string reason;
};

/// Best convergent p/q of x with q <= max_den and |x - p/q| < tol |x|.
std::optional<std::pair<long, long>> rational_reconstruction(double x, long max_den, double tol);

HelixClassification classify_helix(const HelixCurve &helix, long max_den = 1000000, double tol = 1e-12);

} // namespace curvedist
