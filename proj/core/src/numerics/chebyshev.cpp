#include "rapt/numerics/chebyshev.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rapt/errors.hpp"

namespace rapt::num {

ChebyshevSeries::ChebyshevSeries(std::vector<double> coefficients, double a, double b)
    : coeffs_(std::move(coefficients)), a_(a), b_(b) {
    if (!(a < b)) throw ValidationError("ChebyshevSeries: domain requires a < b");
    if (coeffs_.empty()) throw ValidationError("ChebyshevSeries: empty coefficient list");
}

double ChebyshevSeries::operator()(double x) const {
    const double tol = 1e-12 * std::max({1.0, std::fabs(a_), std::fabs(b_)});
    if (x < a_ - tol || x > b_ + tol) {
        throw DomainError("ChebyshevSeries: evaluation point " + std::to_string(x) +
                          " outside [" + std::to_string(a_) + ", " + std::to_string(b_) + "]");
    }
    x = std::clamp(x, a_, b_);
    const double y = (2.0 * x - a_ - b_) / (b_ - a_);
    const double y2 = 2.0 * y;
    double d = 0.0, dd = 0.0;
    for (std::size_t j = coeffs_.size() - 1; j >= 1; --j) {
        double sv = d;
        d = y2 * d - dd + coeffs_[j];
        dd = sv;
    }
    return y * d - dd + 0.5 * coeffs_[0];
}

std::vector<double> ChebyshevSeries::to_monomial() const {
    std::vector<double> halved = coeffs_;
    halved[0] *= 0.5;
    std::vector<double> unit = chebyshev_plain_to_monomial_unit(halved);
    const double scale = 2.0 / (b_ - a_);
    const double shift = -(a_ + b_) / (b_ - a_);
    return monomial_affine_substitution(unit, scale, shift);
}

ChebyshevSeries chebyshev_fit(const std::function<double(double)>& f, double a, double b,
                              int sample_count) {
    if (sample_count < 2) throw ValidationError("chebyshev_fit: need at least 2 samples");
    if (!(a < b)) throw ValidationError("chebyshev_fit: domain requires a < b");
    const int n = sample_count;
    std::vector<double> fv(n);
    for (int k = 1; k <= n; ++k) {
        const double y = std::cos(M_PI * (k - 0.5) / n);
        const double x = 0.5 * (b - a) * (y + 1.0) + a;
        fv[k - 1] = f(x);
    }
    std::vector<double> coeffs(n);
    for (int j = 0; j < n; ++j) {
        double sum = 0.0;
        for (int k = 1; k <= n; ++k) {
            sum += fv[k - 1] * std::cos(M_PI * j * (k - 0.5) / n);
        }
        coeffs[j] = 2.0 * sum / n;
    }
    return ChebyshevSeries(std::move(coeffs), a, b);
}

double chebyshev_sum_plain(const std::vector<double>& coeffs, double y) {
    const double y2 = 2.0 * y;
    double d = 0.0, dd = 0.0;
    for (std::size_t j = coeffs.size() - 1; j >= 1; --j) {
        double sv = d;
        d = y2 * d - dd + coeffs[j];
        dd = sv;
    }
    return y * d - dd + coeffs[0];
}

std::vector<double> chebyshev_plain_to_monomial_unit(const std::vector<double>& coeffs) {
    const std::size_t n = coeffs.size();
    std::vector<double> result(n, 0.0);
    // T_{j+1} = 2 y T_j - T_{j-1}
    std::vector<double> t_prev{1.0};
    std::vector<double> t_cur{0.0, 1.0};
    result[0] += coeffs[0];
    if (n == 1) return result;
    for (std::size_t j = 1; j < n; ++j) {
        for (std::size_t k = 0; k < t_cur.size(); ++k) result[k] += coeffs[j] * t_cur[k];
        if (j + 1 < n) {
            std::vector<double> t_next(j + 2, 0.0);
            for (std::size_t k = 0; k < t_cur.size(); ++k) t_next[k + 1] += 2.0 * t_cur[k];
            for (std::size_t k = 0; k < t_prev.size(); ++k) t_next[k] -= t_prev[k];
            t_prev = std::move(t_cur);
            t_cur = std::move(t_next);
        }
    }
    return result;
}

std::vector<double> monomial_affine_substitution(const std::vector<double>& poly, double scale,
                                                 double shift) {
    // Horner-style composition: q(x) = (...(d_n (sx+t) + d_{n-1})(sx+t) + ...) + d_0
    std::vector<double> q{0.0};
    for (std::size_t i = poly.size(); i-- > 0;) {
        std::vector<double> next(q.size() + 1, 0.0);
        for (std::size_t k = 0; k < q.size(); ++k) {
            next[k + 1] += q[k] * scale;
            next[k] += q[k] * shift;
        }
        next[0] += poly[i];
        while (next.size() > 1 && next.back() == 0.0) next.pop_back();
        q = std::move(next);
    }
    q.resize(poly.size(), 0.0);
    return q;
}

} // namespace rapt::num
