#pragma once

#include <Eigen/Dense>

#include <complex>

#include "graphwave/exact.hpp"
#include "graphwave/graph.hpp"

namespace graphwave {

// W(k): the evolution restricted to interior bonds of an open graph.
struct OpenEvolution {
  double k = 0.0;
  Eigen::MatrixXcd entries;
};

struct SMatrix {
  double k = 0.0;
  Eigen::MatrixXcd entries;  // lead channel x lead channel
  // I - W(k) had condition number above 1e12; the result is returned but a
  // caller scanning a k-grid may prefer to nudge k by one step.
  bool near_singular = false;
};

OpenEvolution open_evolution(const MetricGraph& g, double k);

// S(k) = diag(rho) + tau_out (I - W)^{-1} diag(e^{ikL}) tau_in by dense LU.
SMatrix smatrix_resolvent(const MetricGraph& g, double k);

// Truncated geometric series: sum_{n<=n_max} tau_out W^n diag(e^{ikL}) tau_in
// plus the direct reflections.  Kept as an independent oracle for the
// resolvent; the remainder is exactly tau_out (I-W)^{-1} W^{n_max+1} E tau_in.
SMatrix smatrix_pathsum(const MetricGraph& g, double k, int n_max);

// Lead-to-bond entry amplitudes, D x H.
Eigen::MatrixXcd lead_entry_matrix(const MetricGraph& g);
// Bond-to-lead exit amplitudes, H x D.
Eigen::MatrixXcd lead_exit_matrix(const MetricGraph& g);

// Closed form for the two-edge junction with the balanced splitter:
// (phi1 phi2 - (phi1+phi2)/2) / (1 - (phi1+phi2)/2), phi_j = e^{2ikL_j}.
std::complex<double> tjunction_smatrix(double L1, double L2, double k);

// Exact coefficient of phi1^t1 phi2^t2 in the family expansion of the
// junction S-matrix: ((t1+t2) - (t1-t2)^2) / (2^{t1+t2} t1 t2) * C(t1+t2-2, t1-1)
// for t1, t2 >= 1, and -2^{-t} when one index is zero.
BigRational tjunction_family_coefficient(long t1, long t2);

}  // namespace graphwave
