#include "curvedist/simplicity.hpp"

#include "curvedist/errors.hpp"
#include "curvedist/parallel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <sstream>

namespace curvedist {

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

// Lowest-index witness wins so the report does not depend on scheduling.
std::optional<std::string> first_witness(std::vector<std::optional<std::string>> &slots) {
    for (auto &s : slots)
        if (s) return s;
    return std::nullopt;
}

} // namespace

bool SimplicityReport::all_passed() const {
    return std::all_of(conditions.begin(), conditions.end(), [](const auto &c) { return c.passed; });
}

SimplicityReport check_simplicity(const Curve &curve, const Quantity &quantity, int grid_size, double tol) {
    if (grid_size < 32) throw ValidationError("simplicity grid needs at least 32 points");
    if (!(tol > 0.0)) throw ValidationError("tolerance must be positive");
    if (quantity.dimension() != curve.dimension())
        throw DimensionMismatch("quantity and curve dimensions differ");

    SimplicityReport report;
    report.grid_size = grid_size;
    report.tol = tol;
    report.window = curve.domain().clipped(4.0);
    const auto n = static_cast<std::size_t>(grid_size);
    const double lo = report.window.lo(), hi = report.window.hi();

    std::vector<double> grid(n);
    std::vector<Jet> jets(n);
    for (std::size_t i = 0; i < n; ++i) grid[i] = lo + (static_cast<double>(i) + 0.5) * (hi - lo) / static_cast<double>(n);
    parallel_for(n, [&](std::size_t i) { jets[i] = derivative_jet(curve, grid[i], 2); });

    // D over all ordered grid pairs; the largest magnitude sets the value scale.
    std::vector<double> dmat(n * n);
    parallel_for(n, [&](std::size_t i) {
        for (std::size_t j = 0; j < n; ++j) dmat[i * n + j] = eval_quantity(quantity, jets[i][0], jets[j][0]);
    });
    double dscale = 0.0;
    for (double v : dmat) dscale = std::max(dscale, std::abs(v));
    if (dscale == 0.0) dscale = 1.0;

    // (1) injective and singularity-free.
    {
        std::vector<std::optional<std::string>> slots(n);
        parallel_for(n, [&](std::size_t i) {
            if (jets[i][1].norm() <= tol) {
                slots[i] = "|gamma'(" + fmt(grid[i]) + ")| = " + fmt(jets[i][1].norm());
                return;
            }
            for (std::size_t j = i + 1; j < n; ++j) {
                if ((jets[i][0] - jets[j][0]).norm() <= tol) {
                    slots[i] = "gamma(" + fmt(grid[i]) + ") = gamma(" + fmt(grid[j]) + ")";
                    return;
                }
            }
        });
        auto w = first_witness(slots);
        report.conditions.push_back({1, "injective and singularity-free", !w, w.value_or("")});
    }
    // (2) second derivative not identically zero.
    {
        bool all_small = std::all_of(jets.begin(), jets.end(), [&](const Jet &j) { return j[2].norm() < tol; });
        report.conditions.push_back(
            {2, "second derivative not identically zero", !all_small, all_small ? "gamma'' == 0 on the grid" : ""});
    }
    // (3) distance-polynomial axioms.
    {
        const double zero_tol = tol * dscale;
        std::vector<std::optional<std::string>> slots(n);
        parallel_for(n, [&](std::size_t i) {
            if (std::abs(dmat[i * n + i]) > zero_tol) {
                slots[i] = "D(gamma(t),gamma(t)) = " + fmt(dmat[i * n + i]) + " at t = " + fmt(grid[i]);
                return;
            }
            for (std::size_t j = i + 1; j < n; ++j) {
                const double a = dmat[i * n + j], b = dmat[j * n + i];
                if (std::abs(a - b) > tol * std::max(1.0, std::abs(a))) {
                    slots[i] = "asymmetric at (" + fmt(grid[i]) + ", " + fmt(grid[j]) + "): " + fmt(a) + " vs " + fmt(b);
                    return;
                }
                if (std::abs(a) <= zero_tol) {
                    slots[i] = "D vanishes off the diagonal at (" + fmt(grid[i]) + ", " + fmt(grid[j]) + ")";
                    return;
                }
            }
        });
        auto w = first_witness(slots);
        report.conditions.push_back({3, "distance polynomial", !w, w.value_or("")});
    }
    // (4) two-distance map injective for sampled (alpha, beta).
    {
        static constexpr std::array<std::pair<double, double>, 6> kPairs{
            {{0.1, 0.9}, {0.2, 0.6}, {0.3, 0.8}, {0.45, 0.55}, {0.15, 0.4}, {0.7, 0.95}}};
        std::optional<std::string> witness;
        for (const auto &[fa, fb] : kPairs) {
            const auto a = static_cast<std::size_t>(fa * static_cast<double>(n - 1));
            const auto b = static_cast<std::size_t>(fb * static_cast<double>(n - 1));
            std::vector<std::optional<std::string>> slots(n);
            parallel_for(n, [&](std::size_t i) {
                for (std::size_t j = i + 1; j < n; ++j) {
                    const double dx = dmat[i * n + a] - dmat[j * n + a];
                    const double dy = dmat[i * n + b] - dmat[j * n + b];
                    if (std::hypot(dx, dy) <= tol * dscale) {
                        slots[i] = "t = " + fmt(grid[i]) + " and " + fmt(grid[j]) + " share the distance pair for (alpha, beta) = (" +
                                   fmt(grid[a]) + ", " + fmt(grid[b]) + ")";
                        return;
                    }
                }
            });
            witness = first_witness(slots);
            if (witness) break;
        }
        report.conditions.push_back({4, "two-distance map injective", !witness, witness.value_or("")});
    }
    // (5) submersion off the diagonal.
    {
        std::vector<std::optional<std::string>> slots(n);
        parallel_for(n, [&](std::size_t i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (i == j) continue;
                auto g = grad_quantity(quantity, jets[i][0], jets[j][0]);
                const double ga = jets[i][1].dot(g.dx);
                const double gb = jets[j][1].dot(g.dy);
                if (std::hypot(ga, gb) <= tol) {
                    slots[i] = "gradient of D(gamma(a),gamma(b)) vanishes at (" + fmt(grid[i]) + ", " + fmt(grid[j]) + ")";
                    return;
                }
            }
        });
        auto w = first_witness(slots);
        report.conditions.push_back({5, "submersion", !w, w.value_or("")});
    }
    return report;
}

} // namespace curvedist
