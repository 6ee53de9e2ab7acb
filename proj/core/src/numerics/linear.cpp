#include "rapt/numerics/linear.hpp"

#include <cmath>
#include <limits>

#include "rapt/errors.hpp"

namespace rapt::num {

LinearSolveResult solve_partial_pivot(std::vector<double> matrix, std::vector<double> rhs, int n) {
    const std::vector<double> a0 = matrix;
    const std::vector<double> b0 = rhs;
    auto at = [&](int r, int c) -> double& { return matrix[static_cast<std::size_t>(r) * n + c]; };

    double max_pivot = 0.0;
    double min_pivot = std::numeric_limits<double>::infinity();
    for (int k = 0; k < n; ++k) {
        int pivot_row = k;
        double best = std::fabs(at(k, k));
        for (int r = k + 1; r < n; ++r) {
            if (std::fabs(at(r, k)) > best) {
                best = std::fabs(at(r, k));
                pivot_row = r;
            }
        }
        if (best == 0.0) {
            throw SingularSystemError("solve_partial_pivot: zero pivot at column " +
                                      std::to_string(k));
        }
        if (pivot_row != k) {
            for (int c = k; c < n; ++c) std::swap(at(k, c), at(pivot_row, c));
            std::swap(rhs[k], rhs[pivot_row]);
        }
        max_pivot = std::max(max_pivot, best);
        min_pivot = std::min(min_pivot, best);
        for (int r = k + 1; r < n; ++r) {
            const double factor = at(r, k) / at(k, k);
            if (factor == 0.0) continue;
            at(r, k) = 0.0;
            for (int c = k + 1; c < n; ++c) at(r, c) -= factor * at(k, c);
            rhs[r] -= factor * rhs[k];
        }
    }

    LinearSolveResult result;
    result.x.assign(n, 0.0);
    for (int r = n - 1; r >= 0; --r) {
        double sum = rhs[r];
        for (int c = r + 1; c < n; ++c) sum -= at(r, c) * result.x[c];
        result.x[r] = sum / at(r, r);
    }
    result.condition_estimate = max_pivot / min_pivot;

    double a_norm = 0.0, x_norm = 0.0, b_norm = 0.0, r_norm = 0.0;
    for (int r = 0; r < n; ++r) {
        double row_sum = 0.0;
        double res = -b0[r];
        for (int c = 0; c < n; ++c) {
            row_sum += std::fabs(a0[static_cast<std::size_t>(r) * n + c]);
            res += a0[static_cast<std::size_t>(r) * n + c] * result.x[c];
        }
        a_norm = std::max(a_norm, row_sum);
        r_norm = std::max(r_norm, std::fabs(res));
        x_norm = std::max(x_norm, std::fabs(result.x[r]));
        b_norm = std::max(b_norm, std::fabs(b0[r]));
    }
    const double denom = a_norm * x_norm + b_norm;
    result.relative_residual = denom > 0.0 ? r_norm / denom : 0.0;
    return result;
}

} // namespace rapt::num
