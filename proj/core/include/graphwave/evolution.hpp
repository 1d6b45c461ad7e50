#pragma once

#include <Eigen/Dense>

#include <complex>
#include <vector>

#include "graphwave/graph.hpp"

namespace graphwave {

struct EvolutionOperator {
  double k = 0.0;
  Eigen::MatrixXcd entries;
};

// Entrywise |amplitude|^2 of the k-independent part of the evolution:
// doubly stochastic for compact graphs, sub-Markov when leads drain mass.
struct ClassicalMap {
  Eigen::MatrixXd entries;
};

// U(k) = diag(e^{ikL_d}) * sigma on the bond adjacency pattern.
EvolutionOperator evolution_operator(const MetricGraph& g, double k);

// det(I - U(k)); its real zeros are the compact spectrum.
std::complex<double> secular_value(const MetricGraph& g, double k);

// det(I - U(k)) with the rigid phase e^{i(k L_tot + arg det(sigma)/2)} and
// the (-2i)^D factor stripped.  Up to one fixed sign this is the product of
// sin(theta_j/2) over the eigenphases of U(k), so it is real and changes
// sign across every simple root.
double secular_indicator(const MetricGraph& g, double k);

// Exact number of secular roots in (k_lo, k_hi], with multiplicity.  Each
// eigenphase of U(k) rotates counterclockwise at rate >= min bond length,
// so the winding flux through phase zero counts the crossings.
int count_spectrum(const MetricGraph& g, double k_lo, double k_hi);

// Ascending secular roots in [k_min, k_max], each localized to 1e-10 by
// bisecting the eigenphase counter.  Grid cells holding several roots are
// subdivided; clusters that never separate are emitted with multiplicity.
// Default grid step: 0.1 * pi / total length.
std::vector<double> find_spectrum(const MetricGraph& g, double k_min, double k_max);
std::vector<double> find_spectrum(const MetricGraph& g, double k_min, double k_max,
                                  double grid_step);

ClassicalMap classical_map(const MetricGraph& g);

// M^t p0 (or the sub-Markov analogue on open graphs).
Eigen::VectorXd propagate_classical(const Eigen::VectorXd& p0, const ClassicalMap& m, int t);

}  // namespace graphwave
