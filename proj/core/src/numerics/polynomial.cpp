#include "rapt/numerics/polynomial.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "rapt/errors.hpp"

namespace rapt::num {

std::complex<double> polyval(std::span<const double> coeffs, std::complex<double> x) {
    std::complex<double> acc(0.0, 0.0);
    for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * x + coeffs[i];
    return acc;
}

double polyval(std::span<const double> coeffs, double x) {
    double acc = 0.0;
    for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * x + coeffs[i];
    return acc;
}

std::vector<double> polyder(std::span<const double> coeffs) {
    if (coeffs.size() <= 1) return {0.0};
    std::vector<double> d(coeffs.size() - 1);
    for (std::size_t k = 1; k < coeffs.size(); ++k) d[k - 1] = k * coeffs[k];
    return d;
}

namespace {

// Parlett-Reinsch style balancing of the companion matrix; scaling by
// powers of two keeps the transform exact in floating point.
void balance(Eigen::MatrixXd& m) {
    const int n = static_cast<int>(m.rows());
    Eigen::MatrixXd off = m;
    off.diagonal().setZero();
    const double gamma = 0.9;
    bool changed = true;
    while (changed) {
        changed = false;
        for (int i = 0; i < n; ++i) {
            const double row_norm = off.row(i).lpNorm<1>();
            const double col_norm = off.col(i).lpNorm<1>();
            if (row_norm == 0.0 || col_norm == 0.0) continue;
            int exponent = 0;
            std::frexp(row_norm / col_norm, &exponent);
            exponent /= 2;
            if (exponent != 0) {
                const double scaled_col = std::ldexp(col_norm, exponent);
                const double scaled_row = std::ldexp(row_norm, -exponent);
                if (scaled_col + scaled_row < gamma * (col_norm + row_norm)) {
                    changed = true;
                    off.row(i) *= std::ldexp(1.0, -exponent);
                    off.col(i) *= std::ldexp(1.0, exponent);
                }
            }
        }
    }
    off.diagonal() = m.diagonal();
    m = off;
}

} // namespace

std::vector<std::complex<double>> poly_roots(std::span<const double> coeffs) {
    std::vector<double> c(coeffs.begin(), coeffs.end());
    while (c.size() > 1 && c.back() == 0.0) c.pop_back();
    if (c.size() < 2) {
        throw NumericalError("poly_roots: degenerate polynomial of degree < 1");
    }
    const int n = static_cast<int>(c.size()) - 1;

    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
    for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) companion(i, n - 1) = -c[i] / c[n];
    balance(companion);

    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("poly_roots: eigenvalue iteration failed to converge");
    }

    std::vector<double> deriv = polyder(c);
    std::vector<std::complex<double>> roots(n);
    for (int i = 0; i < n; ++i) {
        std::complex<double> r = solver.eigenvalues()[i];
        for (int step = 0; step < 3; ++step) {
            std::complex<double> p = polyval(c, r);
            std::complex<double> dp = polyval(deriv, r);
            if (std::abs(dp) == 0.0) break;
            std::complex<double> delta = p / dp;
            if (!std::isfinite(delta.real()) || !std::isfinite(delta.imag())) break;
            // A Newton step larger than the root scale means we are in a
            // region where polishing would diverge; keep the eigenvalue.
            if (std::abs(delta) > 0.5 * (1.0 + std::abs(r))) break;
            r -= delta;
        }
        roots[i] = r;
    }
    std::sort(roots.begin(), roots.end(), [](const auto& a, const auto& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return roots;
}

} // namespace rapt::num
