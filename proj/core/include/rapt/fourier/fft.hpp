#pragma once

#include <complex>
#include <vector>

namespace rapt::fourier {

/// In-place radix-2 Cooley-Tukey transform. The forward transform uses
/// the e^{-2 pi i j k / N} kernel; the inverse conjugates and divides
/// by N so that a round trip reproduces the input. N must be a power of
/// two.
void fft_radix2(std::vector<std::complex<double>>& values, bool inverse);

/// Out-of-place convenience wrapper.
std::vector<std::complex<double>> fft(std::vector<std::complex<double>> values,
                                      bool inverse = false);

} // namespace rapt::fourier
