#pragma once

#include <vector>

namespace rapt::num {

/// Result of a dense square solve with partial pivoting.
struct LinearSolveResult {
    std::vector<double> x;
    double condition_estimate = 0.0; // max|pivot| / min|pivot|
    double relative_residual = 0.0;  // ||A x - b||_inf / (||A||_inf ||x||_inf + ||b||_inf)
};

/// Gaussian elimination with partial pivoting on a row-major n x n
/// matrix. Throws SingularSystemError on an exactly zero pivot.
LinearSolveResult solve_partial_pivot(std::vector<double> matrix, std::vector<double> rhs, int n);

} // namespace rapt::num
