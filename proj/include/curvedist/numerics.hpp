#pragma once

// Small numerical kernels shared across modules.

#include <cstddef>
#include <functional>
#include <vector>

namespace curvedist::numerics {

/// Gauss-Legendre rule on [a, b] with the given number of nodes (cached).
double gauss_legendre(const std::function<double(double)> &f, double a, double b, int nodes = 10);

/// Adaptive bisection on Gauss-Legendre estimates until |I(a,b) - I(a,m) - I(m,b)| <= tol.
double adaptive_integrate(const std::function<double(double)> &f, double a, double b, double tol, int max_depth = 40);

/// Finite-difference weights for the order-th derivative at 0 on the given
/// node offsets (Fornberg's recursion).
std::vector<double> fd_weights(const std::vector<double> &offsets, int order);

/// Chebyshev nodes of the first kind mapped to (a, b); all strictly interior.
std::vector<double> chebyshev_nodes(double a, double b, int n);

/// Truncated power series helpers; index i is the coefficient of x^i.
namespace series {
using Series = std::vector<double>;
Series mul(const Series &a, const Series &b, std::size_t len);
Series sqrt(const Series &a, std::size_t len);
/// Compositional inverse of b (b[0] == 0, b[1] != 0).
Series revert(const Series &b, std::size_t len);
/// a(b(x)) with b[0] == 0.
Series compose(const Series &a, const Series &b, std::size_t len);
} // namespace series

} // namespace curvedist::numerics
