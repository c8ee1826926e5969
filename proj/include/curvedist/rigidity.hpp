#pragma once

// Frameworks with vertices on one curve, infinitesimal flexibility, and the
// rigidity function H used to detect T-degenerate curves.

#include "curvedist/curve.hpp"
#include "curvedist/exact.hpp"
#include "curvedist/quantity.hpp"

#include <Eigen/Dense>
#include <optional>
#include <utility>
#include <vector>

namespace curvedist {

using Edge = std::pair<int, int>;

struct Framework {
    Curve curve;
    Quantity quantity;
    int vertex_count = 0;
    std::vector<Edge> edges;
    std::vector<double> embedding;
    /// Present when the embedding was given exactly.
    std::optional<std::vector<Rational>> exact_embedding;

    bool is_exact() const { return exact_embedding.has_value() && curve.is_rational(); }
};

/// Validated constructors: no self-loops or duplicate edges, distinct
/// parameters inside the curve domain.
Framework make_framework(Curve curve, Quantity quantity, std::vector<Edge> edges, std::vector<double> embedding);
Framework make_framework(Curve curve, Quantity quantity, std::vector<Edge> edges, std::vector<Rational> embedding);

std::vector<Edge> complete_graph_edges(int n);
std::vector<Edge> complete_bipartite_edges(int left, int right);

/// Row for edge (u, w): gamma'(u).D_X in column u, gamma'(w).D_Y in column w.
Eigen::MatrixXd flexibility_matrix(const Framework &fw);
RationalMatrix flexibility_matrix_exact(const Framework &fw);

struct FlexibilityResult {
    int rows = 0;
    int cols = 0;
    int numerical_nullity = 0;
    std::optional<int> exact_nullity;
    std::optional<std::vector<std::vector<Rational>>> exact_kernel;
    std::vector<double> singular_values;
    double tol = 0.0;

    int nullity() const { return exact_nullity.value_or(numerical_nullity); }
    bool flexible() const { return nullity() >= 1; }
    bool paths_agree() const { return !exact_nullity || *exact_nullity == numerical_nullity; }
};

FlexibilityResult infinitesimal_nullity(const Framework &fw, double tol = 1e-9);

/// H_ab(tau). At tau = a or b the removable limit is returned, and within
/// 1e-7 of them the value is blended linearly towards that limit.
double eval_H(const Curve &curve, const Quantity &q, double alpha, double beta, double tau);

struct DegeneracyWitness {
    double alpha = 0.0, beta = 0.0, tau1 = 0.0, tau2 = 0.0;
    double h1 = 0.0, h2 = 0.0;
};

struct DegeneracyReport {
    bool is_degenerate_candidate = false;
    double max_H_variation = 0.0;
    std::optional<DegeneracyWitness> witness;
    /// Sign changes of the discrete derivative of H along tau for the witness pair.
    int sign_changes = 0;
    int pairs_scanned = 0;
    int skipped_points = 0;
    Interval window;
};

struct DegeneracyOptions {
    int pairs = 8;
    int tau_grid = 64;
    double tol = 1e-8;
    /// Defaults to the central quarter of the domain clipped to [-4, 4].
    std::optional<Interval> window;
};

Interval default_degeneracy_window(const Curve &curve);
DegeneracyReport scan_T_degeneracy(const Curve &curve, const Quantity &q, const DegeneracyOptions &opts = {});

} // namespace curvedist
