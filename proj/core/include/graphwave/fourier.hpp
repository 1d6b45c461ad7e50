#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace graphwave {

// F_m = sum_j c_j e^{-i j m w} for m = 0..m_count-1, computed with the
// Bluestein factorization jm = (j^2 + m^2 - (j-m)^2)/2 so the whole family
// of shifted sums costs one convolution (three FFTs of the padded size).
// The quadratic phases j^2 w / 2 are reduced mod 2pi in long double, which
// keeps them accurate up to j ~ 2^26.
std::vector<std::complex<double>> chirp_transform(const std::vector<std::complex<double>>& c,
                                                  double w, std::size_t m_count);

// Same sums evaluated term by term; O(N * M), kept as the cross-check.
std::vector<std::complex<double>> direct_transform(const std::vector<std::complex<double>>& c,
                                                   double w, std::size_t m_count);

}  // namespace graphwave
