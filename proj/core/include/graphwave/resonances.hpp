#pragma once

#include <complex>
#include <vector>

#include "graphwave/graph.hpp"
#include "graphwave/wavepacket.hpp"

namespace graphwave {

// Near-coincidence of the single-edge phase conditions k1 = pi*m1/L1 and
// k2 = pi*m2/L2.  Exact coincidences (commensurate lengths) are kept in the
// list but flagged, since they cannot seed a pole.
struct PhasePair {
  double k1 = 0.0;
  double k2 = 0.0;
  bool degenerate = false;
};

struct ResonancePole {
  double kappa = 0.0;  // resonant wave number; the pole sits at kappa - i*gamma
  double gamma = 0.0;
  double k1 = 0.0;
  double k2 = 0.0;
  double delta_k = 0.0;       // |k2 - k1|
  double lambda = 0.0;        // L1*L2/(L1+L2)
  double total_length = 0.0;  // L1+L2
  bool seed_valid = false;    // two-level seed formula trusted at this spacing
  bool refined = false;
};

std::vector<PhasePair> near_degenerate_pairs(double l1, double l2, double k_min,
                                             double k_max, double threshold);

ResonancePole pole_from_pair(double k1, double k2, double l1, double l2);

// Newton iteration on the closed-form secular denominator of the two-edge
// junction.  Returns whether the pole converged; on success kappa/gamma are
// replaced by the refined values.
bool refine_pole(double l1, double l2, ResonancePole& pole);

// Same iteration on det(I - W(z)) for an arbitrary open graph.
bool refine_pole(const MetricGraph& g, ResonancePole& pole);

// Complete census of the zeros of det(I - W(z)) in the strip
// [k_min, k_max] x [-gamma_max, 0), by winding-number bisection with a
// Newton polish of each isolated root.  Sorted by real part.
std::vector<std::complex<double>> find_poles(const MetricGraph& g, double k_min,
                                             double k_max, double gamma_max = 2.0);

// Mean density of resonance widths per unit wave number.
double resonance_density(double gamma, double total_length);

// Long-time cumulative delay probability from a resonance census.
double longtime_cumulative_resonances(const std::vector<ResonancePole>& poles,
                                      const Envelope& env, double s);

// Closed form obtained by integrating the census against the mean density.
double longtime_cumulative_integral(double total_length, double s);

}  // namespace graphwave
