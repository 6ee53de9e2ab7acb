#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "rapt/numerics/chebyshev.hpp"
#include "rapt/numerics/rational.hpp"

namespace rapt::num {

/// Partial-fraction form of a rational function on [a, b]:
///   A_0 + sum_j A_j / (v - B_j) + correction(e^{-v}),
/// where every retained pole has Re(B_j) < 0 and the terms belonging to
/// poles with Re(B_j) >= 0 are refit as a polynomial in v* = e^{-v}.
struct PartialFractionForm {
    double constant = 0.0;                        // A_0
    std::vector<std::complex<double>> residues;   // A_j
    std::vector<std::complex<double>> poles;      // B_j, Re < 0
    std::optional<ChebyshevSeries> correction;    // series in v* on [e^{-b}, e^{-a}]
    std::vector<double> correction_mono;          // power-basis coefficients in v*
    double a = 0.0;
    double b = 0.0;

    bool has_correction() const noexcept { return !correction_mono.empty(); }

    /// A_0 + sum of retained pole terms (real part) + correction(e^{-v}).
    double eval(double v) const;
};

/// Decompose a rational approximant. Poles with negative real part are
/// carried explicitly with residues num(B)/den'(B); the remaining terms
/// are absorbed into a degree-`correction_degree` fit in v* = e^{-v}.
/// Throws RepeatedRootError when denominator roots are not simple.
PartialFractionForm partial_fractions(const RationalApproximant& approx, int correction_degree);

} // namespace rapt::num
