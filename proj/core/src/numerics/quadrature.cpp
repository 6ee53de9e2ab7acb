#include "rapt/numerics/quadrature.hpp"

#include <cmath>
#include <limits>

#include "rapt/errors.hpp"

namespace rapt::num {

QuadratureRule gauss_legendre(int count, double lo, double hi) {
    if (count < 1) throw ValidationError("gauss_legendre: count must be >= 1");
    if (!(lo < hi)) throw ValidationError("gauss_legendre: interval requires lo < hi");

    QuadratureRule rule;
    rule.lo = lo;
    rule.hi = hi;
    rule.nodes.resize(count);
    rule.weights.resize(count);

    const int m = (count + 1) / 2;
    const double xm = 0.5 * (hi + lo);
    const double xl = 0.5 * (hi - lo);
    for (int i = 0; i < m; ++i) {
        double z = std::cos(M_PI * (i + 0.75) / (count + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 1; j <= count; ++j) {
                double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
            }
            pp = count * (z * p1 - p2) / (z * z - 1.0);
            double dz = p1 / pp;
            z -= dz;
            if (std::fabs(dz) < std::numeric_limits<double>::epsilon()) break;
        }
        rule.nodes[i] = xm - xl * z;
        rule.nodes[count - 1 - i] = xm + xl * z;
        double w = 2.0 * xl / ((1.0 - z * z) * pp * pp);
        rule.weights[i] = w;
        rule.weights[count - 1 - i] = w;
    }
    return rule;
}

} // namespace rapt::num
