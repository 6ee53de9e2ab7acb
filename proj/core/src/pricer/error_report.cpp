#include "rapt/pricer/error_report.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "rapt/errors.hpp"
#include "rapt/numerics/quadrature.hpp"
#include "rapt/pricer/black_scholes.hpp"

namespace rapt::pricer {

namespace {

// Composite Gauss-Legendre with panel doubling until two successive
// refinements agree.
double integrate(const std::function<double(double)>& f, double lo, double hi) {
    if (!(hi > lo)) return 0.0;
    double previous = 0.0;
    for (int panels = 4; panels <= 256; panels *= 2) {
        double total = 0.0;
        for (int p = 0; p < panels; ++p) {
            const double a = lo + (hi - lo) * p / panels;
            const double b = lo + (hi - lo) * (p + 1) / panels;
            const num::QuadratureRule rule = num::gauss_legendre(16, a, b);
            for (int k = 0; k < rule.count(); ++k) {
                total += rule.weights[k] * f(rule.nodes[k]);
            }
        }
        if (panels > 4 && std::fabs(total - previous) < 1e-13 * (1.0 + std::fabs(total))) {
            return total;
        }
        previous = total;
    }
    return previous;
}

} // namespace

RegionErrors error_report(const PricedSlice& slice, const std::function<double(double)>& density,
                          double upper) {
    auto integrand = [&](double z) {
        return (c_bs(z, slice.x, slice.mu) - slice.approx(z)) * density(z);
    };
    RegionErrors out;
    out.below = integrate(integrand, 0.0, slice.a);
    out.inside = integrate(integrand, slice.a, slice.b);
    out.above = upper > slice.b ? integrate(integrand, slice.b, upper) : 0.0;
    return out;
}

RegionErrors error_report(const PricedSlice& slice, std::span<const double> samples) {
    if (samples.empty()) throw ValidationError("error_report: empty sample set");
    // The error function is smooth, so it is tabulated once on a fine
    // grid and sampled by linear interpolation; the interpolation error
    // is orders below the reported epsilons while the average still runs
    // over the exact draws.
    double z_max = 0.0;
    for (double z : samples) z_max = std::max(z_max, z);
    z_max = std::max(z_max * (1.0 + 1e-12), slice.b);
    const int grid_n = 4096;
    const double h = z_max / (grid_n - 1);
    std::vector<double> table(grid_n);
    for (int i = 0; i < grid_n; ++i) {
        const double z = h * i;
        table[i] = c_bs(z, slice.x, slice.mu) - slice.approx(z);
    }
    auto diff_at = [&](double z) {
        const double pos = z / h;
        const int i = std::min(static_cast<int>(pos), grid_n - 2);
        const double w = pos - i;
        return (1.0 - w) * table[i] + w * table[i + 1];
    };

    RegionErrors out;
    for (double z : samples) {
        const double diff = diff_at(z);
        if (z < slice.a) {
            out.below += diff;
        } else if (z <= slice.b) {
            out.inside += diff;
        } else {
            out.above += diff;
        }
    }
    const double n = static_cast<double>(samples.size());
    out.below /= n;
    out.inside /= n;
    out.above /= n;
    return out;
}

} // namespace rapt::pricer
