#pragma once

#include <complex>
#include <vector>

#include "graphwave/paths.hpp"

namespace graphwave {

// Normalized Gaussian envelope omega(k) = (2/(pi sigma^2))^{1/4} e^{-(k-k0)^2/sigma^2}.
struct Envelope {
  double k0 = 0.0;
  double sigma = 0.0;
  // k0 > 2 sigma, the regime where the negative-k tail is negligible.
  // Violations are flagged, not rejected.
  bool regime_ok = true;

  double value(double k) const;
};

Envelope gaussian_envelope(double k0, double sigma);

// S(k) on a uniform k-grid: k_j = k_start + j * delta_k.
struct SampledAmplitude {
  double k_start = 0.0;
  double delta_k = 0.0;
  std::vector<std::complex<double>> values;
};

struct DelayDistribution {
  enum class Source { Fourier, Family, Classical, Resonance };
  Source source = Source::Fourier;
  std::vector<double> s;
  std::vector<double> density;     // P(s)
  std::vector<double> cumulative;  // integral of P from the grid start
};

// P(s) = (1/2pi) |sum_j omega(k_j) S(k_j) e^{-i k_j s} delta_k|^2 by
// trapezoid quadrature; uniform s-grids go through the chirp transform,
// anything else falls back to the direct sum.  The k-grid must cover
// [k0 - 8 sigma, k0 + 8 sigma] (clipped at zero) and satisfy the aliasing
// guard delta_k <= pi / (4 s_max).
DelayDistribution delay_density_fourier(const std::vector<double>& s_values,
                                        const SampledAmplitude& amplitude, const Envelope& env);

// The family-sum form of the same density: Gaussian peaks of width 1/sigma
// at the half-sums of family lengths, weighted by amplitude cross terms.
// Direct lead reflection is not part of the families, so comparisons with
// the Fourier route start a few envelope widths after s = 0.
DelayDistribution delay_density_families(const std::vector<PathFamily>& families,
                                         const Envelope& env,
                                         const std::vector<double>& s_values,
                                         double tail_tolerance = 1e-2);

}  // namespace graphwave
