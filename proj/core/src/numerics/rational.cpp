#include "rapt/numerics/rational.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "rapt/errors.hpp"
#include "rapt/numerics/chebyshev.hpp"
#include "rapt/numerics/linear.hpp"

namespace rapt::num {

namespace {

double map_to_unit(double x, double a, double b) { return (2.0 * x - a - b) / (b - a); }

} // namespace

void fill_monomial_forms(RationalApproximant& r) {
    const double scale = 2.0 / (r.b - r.a);
    const double shift = -(r.a + r.b) / (r.b - r.a);
    r.num_mono = monomial_affine_substitution(chebyshev_plain_to_monomial_unit(r.num_cheb), scale,
                                              shift);
    r.den_mono = monomial_affine_substitution(chebyshev_plain_to_monomial_unit(r.den_cheb), scale,
                                              shift);
}

double RationalApproximant::operator()(double x) const {
    const double y = map_to_unit(x, a, b);
    return chebyshev_sum_plain(num_cheb, y) / chebyshev_sum_plain(den_cheb, y);
}

double RationalApproximant::eval_monomial(double x) const {
    double num = 0.0, den = 0.0;
    for (std::size_t i = num_mono.size(); i-- > 0;) num = num * x + num_mono[i];
    for (std::size_t i = den_mono.size(); i-- > 0;) den = den * x + den_mono[i];
    return num / den;
}

bool RationalApproximant::denominator_positive_on_grid(int points) const {
    double first = 0.0;
    for (int i = 0; i < points; ++i) {
        const double y = -1.0 + 2.0 * i / (points - 1.0);
        const double d = chebyshev_sum_plain(den_cheb, y);
        if (i == 0) first = d;
        if (d == 0.0 || (d > 0.0) != (first > 0.0)) return false;
    }
    return true;
}

double RationalApproximant::denominator_margin(int points) const {
    double smallest = std::numeric_limits<double>::infinity();
    double largest = 0.0;
    for (int i = 0; i < points; ++i) {
        const double y = -1.0 + 2.0 * i / (points - 1.0);
        const double d = std::fabs(chebyshev_sum_plain(den_cheb, y));
        smallest = std::min(smallest, d);
        largest = std::max(largest, d);
    }
    return largest > 0.0 ? smallest / largest : 0.0;
}

RationalApproximant rational_fit_from_coeffs(const std::vector<double>& cheb_coeffs, double a,
                                             double b, int degree) {
    const int m = degree;
    if (m < 1) throw ValidationError("rational fit: degree must be >= 1");
    if (static_cast<int>(cheb_coeffs.size()) < 3 * m + 1) {
        throw ValidationError("rational fit: need at least 3m+1 Chebyshev coefficients");
    }
    // gamma_j: series coefficients with the halved-c0 convention folded in.
    auto gamma = [&](int j) -> double {
        if (j == 0) return 0.5 * cheb_coeffs[0];
        if (j >= static_cast<int>(cheb_coeffs.size())) return 0.0;
        return cheb_coeffs[j];
    };

    // Unknowns u = [a_0..a_m, b_1..b_m]; equations match the Chebyshev
    // coefficients of f * den - num for T_0 .. T_{2m}.
    const int n = 2 * m + 1;
    std::vector<double> mat(static_cast<std::size_t>(n) * n, 0.0);
    std::vector<double> rhs(n, 0.0);
    auto at = [&](int r, int c) -> double& { return mat[static_cast<std::size_t>(r) * n + c]; };

    for (int r = 0; r <= 2 * m; ++r) {
        if (r <= m) at(r, r) = -1.0;
        if (r == 0) {
            for (int i = 1; i <= m; ++i) at(0, m + i) = 0.5 * cheb_coeffs[i];
            rhs[0] = -0.5 * cheb_coeffs[0];
        } else {
            for (int i = 1; i <= m; ++i) {
                double k = gamma(i + r);
                if (i <= r) k += gamma(r - i);
                if (i >= r) k += gamma(i - r);
                at(r, m + i) = 0.5 * k;
            }
            rhs[r] = -gamma(r);
        }
    }

    LinearSolveResult solved = solve_partial_pivot(std::move(mat), std::move(rhs), n);
    if (solved.condition_estimate > 1e12) {
        throw SingularSystemError("rational fit: coefficient system numerically rank-deficient "
                                  "(degree too high for f on this domain)");
    }
    if (solved.relative_residual > 1e-10) {
        throw NumericalError("rational fit: linear-system residual " +
                             std::to_string(solved.relative_residual) + " exceeds 1e-10");
    }

    RationalApproximant result;
    result.degree = m;
    result.a = a;
    result.b = b;
    result.num_cheb.assign(solved.x.begin(), solved.x.begin() + m + 1);
    result.den_cheb.assign(m + 1, 0.0);
    result.den_cheb[0] = 1.0;
    for (int i = 1; i <= m; ++i) result.den_cheb[i] = solved.x[m + i];
    if (!result.denominator_positive_on_grid()) {
        throw SingularSystemError(
            "rational fit: denominator has a real root inside the domain (spurious "
            "pole-zero pair; degree too high for f on this domain)");
    }
    fill_monomial_forms(result);
    return result;
}

RationalApproximant rational_chebyshev_fit(const std::function<double(double)>& f, double a,
                                           double b, int degree) {
    const int samples = std::max(64, 4 * degree + 4);
    ChebyshevSeries series = chebyshev_fit(f, a, b, samples);
    return rational_fit_from_coeffs(series.coefficients(), a, b, degree);
}

RationalApproximant rational_ls_fit(const std::function<double(double)>& f, double a, double b,
                                    int degree, double ridge) {
    const int m = degree;
    if (m < 1) throw ValidationError("rational_ls_fit: degree must be >= 1");
    const int grid_n = std::max(256, 16 * (2 * m + 1));
    const int unknowns = 2 * m + 1;

    Eigen::MatrixXd design = Eigen::MatrixXd::Zero(grid_n + unknowns, unknowns);
    Eigen::VectorXd target = Eigen::VectorXd::Zero(grid_n + unknowns);
    double f_scale = 0.0;
    std::vector<double> basis(m + 1);
    for (int i = 0; i < grid_n; ++i) {
        const double y = std::cos(M_PI * (i + 0.5) / grid_n);
        const double x = 0.5 * (b - a) * (y + 1.0) + a;
        const double fx = f(x);
        f_scale = std::max(f_scale, std::fabs(fx));
        basis[0] = 1.0;
        if (m >= 1) basis[1] = y;
        for (int j = 2; j <= m; ++j) basis[j] = 2.0 * y * basis[j - 1] - basis[j - 2];
        for (int j = 0; j <= m; ++j) design(i, j) = basis[j];
        for (int j = 1; j <= m; ++j) design(i, m + j) = -fx * basis[j];
        target(i) = fx;
    }
    const double penalty = ridge * std::max(f_scale, 1.0);
    for (int j = 0; j < unknowns; ++j) design(grid_n + j, j) = penalty;

    Eigen::VectorXd sol = design.colPivHouseholderQr().solve(target);
    if (!sol.allFinite()) throw SingularSystemError("rational_ls_fit: solve failed");

    RationalApproximant result;
    result.degree = m;
    result.a = a;
    result.b = b;
    result.num_cheb.assign(m + 1, 0.0);
    result.den_cheb.assign(m + 1, 0.0);
    result.den_cheb[0] = 1.0;
    for (int j = 0; j <= m; ++j) result.num_cheb[j] = sol(j);
    for (int j = 1; j <= m; ++j) result.den_cheb[j] = sol(m + j);
    if (!result.denominator_positive_on_grid()) {
        throw SingularSystemError("rational_ls_fit: denominator has a real root in the domain");
    }
    fill_monomial_forms(result);
    return result;
}

RationalApproximant minimax_refine(const RationalApproximant& approx,
                                   const std::function<double(double)>& f, int max_iters) {
    const int m = approx.degree;
    const int grid_n = 512;
    const double a = approx.a, b = approx.b;

    // Chebyshev-distributed grid clusters points near the endpoints,
    // where the ripple extrema of a near-minimax fit concentrate.
    std::vector<double> xs(grid_n), ys(grid_n), fv(grid_n);
    for (int i = 0; i < grid_n; ++i) {
        const double y = std::cos(M_PI * (i + 0.5) / grid_n);
        xs[i] = 0.5 * (b - a) * (y + 1.0) + a;
        ys[i] = y;
        fv[i] = f(xs[i]);
    }

    // Chebyshev basis values on the grid.
    Eigen::MatrixXd basis(grid_n, m + 1);
    for (int i = 0; i < grid_n; ++i) {
        basis(i, 0) = 1.0;
        if (m >= 1) basis(i, 1) = ys[i];
        for (int j = 2; j <= m; ++j) basis(i, j) = 2.0 * ys[i] * basis(i, j - 1) - basis(i, j - 2);
    }

    auto grid_max_error = [&](const RationalApproximant& r) {
        double worst = 0.0;
        for (int i = 0; i < grid_n; ++i) worst = std::max(worst, std::fabs(r(xs[i]) - fv[i]));
        return worst;
    };

    RationalApproximant best = approx;
    double best_err = grid_max_error(approx);
    RationalApproximant current = approx;

    for (int iter = 0; iter < max_iters; ++iter) {
        // Weights 1/|error| of the current iterate, clipped around the median.
        std::vector<double> raw(grid_n);
        for (int i = 0; i < grid_n; ++i) {
            const double e = std::fabs(current(xs[i]) - fv[i]);
            raw[i] = 1.0 / std::max(e, 1e-300);
        }
        std::vector<double> sorted = raw;
        std::nth_element(sorted.begin(), sorted.begin() + grid_n / 2, sorted.end());
        const double med = std::max(sorted[grid_n / 2], 1e-300);
        for (double& w : raw) w = std::clamp(w, 1e-3 * med, 1e3 * med);

        // Weighted linear least squares for num - f * den = 0, b_0 = 1:
        //   sum_j a_j T_j(y) - f(x) sum_{j>=1} b_j T_j(y) = f(x)
        Eigen::MatrixXd design(grid_n, 2 * m + 1);
        Eigen::VectorXd target(grid_n);
        for (int i = 0; i < grid_n; ++i) {
            for (int j = 0; j <= m; ++j) design(i, j) = raw[i] * basis(i, j);
            for (int j = 1; j <= m; ++j) design(i, m + j) = -raw[i] * fv[i] * basis(i, j);
            target(i) = raw[i] * fv[i];
        }
        Eigen::VectorXd sol = design.colPivHouseholderQr().solve(target);
        if (!sol.allFinite()) break;

        RationalApproximant candidate;
        candidate.degree = m;
        candidate.a = a;
        candidate.b = b;
        candidate.num_cheb.assign(m + 1, 0.0);
        candidate.den_cheb.assign(m + 1, 0.0);
        candidate.den_cheb[0] = 1.0;
        for (int j = 0; j <= m; ++j) candidate.num_cheb[j] = sol(j);
        for (int j = 1; j <= m; ++j) candidate.den_cheb[j] = sol(m + j);
        if (!candidate.denominator_positive_on_grid()) {
            current = best;
            continue;
        }
        fill_monomial_forms(candidate);

        const double err = grid_max_error(candidate);
        if (err < best_err) {
            best = candidate;
            best_err = err;
        }
        current = candidate;
    }
    return best;
}

} // namespace rapt::num
