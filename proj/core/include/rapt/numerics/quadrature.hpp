#pragma once

#include <vector>

namespace rapt::num {

/// A fixed quadrature rule on [lo, hi]: sum_k weights[k] * f(nodes[k]).
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
    double lo = 0.0;
    double hi = 0.0;

    int count() const noexcept { return static_cast<int>(nodes.size()); }
};

/// Gauss-Legendre nodes and weights by Newton iteration on the Legendre
/// recurrence, affinely mapped to [lo, hi]. Exact for polynomials of
/// degree <= 2*count - 1.
QuadratureRule gauss_legendre(int count, double lo, double hi);

} // namespace rapt::num
