#pragma once

#include "curvedist/curve.hpp"
#include "curvedist/quantity.hpp"

#include <string>
#include <vector>

namespace curvedist {

struct SimplicityCondition {
    int index = 0;
    std::string name;
    bool passed = true;
    /// Empty on pass; otherwise the offending parameters and values.
    std::string witness;
};

/// Sampling verifier for the five simple-pair conditions. A pass is evidence
/// on the grid; a failure comes with a witness that is conclusive up to tol.
struct SimplicityReport {
    std::vector<SimplicityCondition> conditions;
    int grid_size = 0;
    double tol = 0.0;
    Interval window;
    bool all_passed() const;
};

/// Unbounded domains are checked on domain.clipped(4).
SimplicityReport check_simplicity(const Curve &curve, const Quantity &quantity, int grid_size = 256, double tol = 1e-9);

} // namespace curvedist
