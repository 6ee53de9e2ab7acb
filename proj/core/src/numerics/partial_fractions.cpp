#include "rapt/numerics/partial_fractions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "rapt/errors.hpp"
#include "rapt/numerics/polynomial.hpp"

namespace rapt::num {

namespace {

std::vector<double> trim_leading(const std::vector<double>& coeffs, double rel_tol) {
    double scale = 0.0;
    for (double c : coeffs) scale = std::max(scale, std::fabs(c));
    std::vector<double> out = coeffs;
    while (out.size() > 1 && std::fabs(out.back()) <= rel_tol * scale) out.pop_back();
    return out;
}

// Enforce exact conjugate symmetry so evaluation at real arguments stays
// real. Roots with tiny imaginary part are snapped to the real axis.
void symmetrize(std::vector<std::complex<double>>& roots, double scale) {
    const double tol = 1e-8 * scale;
    std::vector<std::complex<double>> out;
    std::vector<bool> used(roots.size(), false);
    for (std::size_t i = 0; i < roots.size(); ++i) {
        if (used[i]) continue;
        if (std::fabs(roots[i].imag()) <= tol) {
            out.emplace_back(roots[i].real(), 0.0);
            used[i] = true;
            continue;
        }
        std::size_t mate = i;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t j = i + 1; j < roots.size(); ++j) {
            if (used[j]) continue;
            const double d = std::abs(roots[j] - std::conj(roots[i]));
            if (d < best) {
                best = d;
                mate = j;
            }
        }
        if (mate == i || best > tol) {
            throw NumericalError("partial_fractions: complex root without conjugate mate");
        }
        const std::complex<double> avg = 0.5 * (roots[i] + std::conj(roots[mate]));
        out.push_back(avg);
        out.push_back(std::conj(avg));
        used[i] = used[mate] = true;
    }
    roots = std::move(out);
}

} // namespace

double PartialFractionForm::eval(double v) const {
    std::complex<double> pole_sum(0.0, 0.0);
    for (std::size_t j = 0; j < poles.size(); ++j) pole_sum += residues[j] / (v - poles[j]);
    double result = constant + pole_sum.real();
    if (!correction_mono.empty()) {
        const double u = std::exp(-v);
        double acc = 0.0;
        for (std::size_t i = correction_mono.size(); i-- > 0;) acc = acc * u + correction_mono[i];
        result += acc;
    }
    return result;
}

PartialFractionForm partial_fractions(const RationalApproximant& approx, int correction_degree) {
    if (approx.num_mono.empty() || approx.den_mono.empty()) {
        throw ValidationError("partial_fractions: monomial form not populated");
    }
    std::vector<double> num = trim_leading(approx.num_mono, 1e-12);
    std::vector<double> den = trim_leading(approx.den_mono, 1e-12);
    if (den.size() < 2) {
        throw NumericalError("partial_fractions: denominator degenerates to a constant");
    }
    if (num.size() > den.size()) {
        throw NumericalError("partial_fractions: numerator degree exceeds denominator degree");
    }

    PartialFractionForm form;
    form.a = approx.a;
    form.b = approx.b;

    std::vector<double> remainder = num;
    if (num.size() == den.size()) {
        form.constant = num.back() / den.back();
        remainder.pop_back();
        for (std::size_t k = 0; k + 1 < den.size(); ++k) remainder[k] -= form.constant * den[k];
    }

    std::vector<std::complex<double>> roots = poly_roots(den);
    double scale = 0.0;
    for (const auto& r : roots) scale = std::max(scale, std::abs(r));
    if (scale == 0.0) scale = 1.0;
    for (std::size_t i = 0; i < roots.size(); ++i) {
        for (std::size_t j = i + 1; j < roots.size(); ++j) {
            if (std::abs(roots[i] - roots[j]) <= 1e-8 * scale) {
                throw RepeatedRootError(
                    "partial_fractions: denominator roots not simple; change the rational degree");
            }
        }
    }
    symmetrize(roots, scale);

    const std::vector<double> dden = polyder(den);
    std::vector<std::complex<double>> bad_poles, bad_residues;
    for (const auto& root : roots) {
        const std::complex<double> residue = polyval(remainder, root) / polyval(dden, root);
        if (root.real() < 0.0) {
            form.poles.push_back(root);
            form.residues.push_back(residue);
        } else {
            bad_poles.push_back(root);
            bad_residues.push_back(residue);
        }
    }

    if (!bad_poles.empty()) {
        // Refit the nonnegative-real-part terms in v* = e^{-v}; the sum is
        // real on the real axis because the bad set is conjugate-closed.
        auto bad_sum = [&](double v) {
            std::complex<double> s(0.0, 0.0);
            for (std::size_t j = 0; j < bad_poles.size(); ++j) {
                s += bad_residues[j] / (v - bad_poles[j]);
            }
            return s.real();
        };
        const double u_lo = std::exp(-form.b);
        const double u_hi = std::exp(-form.a);
        ChebyshevSeries series = chebyshev_fit([&](double u) { return bad_sum(-std::log(u)); },
                                               u_lo, u_hi, correction_degree + 1);
        form.correction_mono = series.to_monomial();
        form.correction = std::move(series);
    }
    return form;
}

} // namespace rapt::num
