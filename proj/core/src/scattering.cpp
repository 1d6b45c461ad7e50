#include "graphwave/scattering.hpp"

#include <cmath>

#include "graphwave/errors.hpp"

namespace graphwave {

namespace {

constexpr double kCondLimit = 1e12;

void require_open(const MetricGraph& g) {
  if (!g.open()) throw PreconditionError("operation needs an open graph (>= 1 lead)");
}

Eigen::MatrixXcd phase_rows(const MetricGraph& g, double k, Eigen::MatrixXcd m) {
  for (int d = 0; d < g.bond_count(); ++d) m.row(d) *= std::polar(1.0, k * g.bond_length(d));
  return m;
}

}  // namespace

OpenEvolution open_evolution(const MetricGraph& g, double k) {
  require_open(g);
  return {k, phase_rows(g, k, g.amplitude_matrix())};
}

Eigen::MatrixXcd lead_entry_matrix(const MetricGraph& g) {
  require_open(g);
  Eigen::MatrixXcd tau = Eigen::MatrixXcd::Zero(g.bond_count(), g.lead_count());
  for (int h = 0; h < g.lead_count(); ++h)
    for (int d : g.outgoing_bonds(g.lead_vertex(h))) tau(d, h) = g.lead_to_bond(d, h);
  return tau;
}

Eigen::MatrixXcd lead_exit_matrix(const MetricGraph& g) {
  require_open(g);
  Eigen::MatrixXcd tau = Eigen::MatrixXcd::Zero(g.lead_count(), g.bond_count());
  for (int h = 0; h < g.lead_count(); ++h)
    for (int d : g.incoming_bonds(g.lead_vertex(h))) tau(h, d) = g.bond_to_lead(h, d);
  return tau;
}

SMatrix smatrix_resolvent(const MetricGraph& g, double k) {
  require_open(g);
  const int D = g.bond_count();
  Eigen::MatrixXcd iw = -open_evolution(g, k).entries;
  iw.diagonal().array() += 1.0;

  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(iw);
  double smin = svd.singularValues()(D - 1);
  double smax = svd.singularValues()(0);

  SMatrix s;
  s.k = k;
  s.near_singular = !(smin > 0.0) || smax / smin > kCondLimit;
  s.entries = lead_exit_matrix(g) * iw.partialPivLu().solve(phase_rows(g, k, lead_entry_matrix(g)));
  for (int h = 0; h < g.lead_count(); ++h) s.entries(h, h) += g.lead_reflection(h);
  return s;
}

SMatrix smatrix_pathsum(const MetricGraph& g, double k, int n_max) {
  require_open(g);
  if (n_max < 0) throw PreconditionError("smatrix_pathsum: n_max must be non-negative");

  Eigen::MatrixXcd w = open_evolution(g, k).entries;
  Eigen::MatrixXcd out = lead_exit_matrix(g);
  Eigen::MatrixXcd v = phase_rows(g, k, lead_entry_matrix(g));

  SMatrix s;
  s.k = k;
  s.entries = Eigen::MatrixXcd::Zero(g.lead_count(), g.lead_count());
  for (int n = 0; n <= n_max; ++n) {
    s.entries += out * v;
    v = w * v;
  }
  for (int h = 0; h < g.lead_count(); ++h) s.entries(h, h) += g.lead_reflection(h);
  return s;
}

std::complex<double> tjunction_smatrix(double L1, double L2, double k) {
  if (!(L1 > 0.0) || !(L2 > 0.0))
    throw PreconditionError("tjunction_smatrix: lengths must be positive");
  std::complex<double> phi1 = std::polar(1.0, 2.0 * k * L1);
  std::complex<double> phi2 = std::polar(1.0, 2.0 * k * L2);
  std::complex<double> den = 1.0 - 0.5 * (phi1 + phi2);
  if (std::abs(den) < 1e-14)
    throw NumericError("tjunction_smatrix: denominator vanished (degenerate phases)");
  return (phi1 * phi2 - 0.5 * (phi1 + phi2)) / den;
}

BigRational tjunction_family_coefficient(long t1, long t2) {
  if (t1 < 0 || t2 < 0 || t1 + t2 < 1)
    throw PreconditionError("tjunction_family_coefficient: need t1 + t2 >= 1, both non-negative");
  long t = t1 + t2;
  if (t1 == 0 || t2 == 0) {
    BigInt den = BigInt(1) << t;
    return BigRational(-1, den);
  }
  BigInt num = (BigInt(t) - BigInt(t1 - t2) * (t1 - t2)) * binomial(t - 2, t1 - 1);
  BigInt den = (BigInt(1) << t) * t1 * t2;
  return BigRational(num, den);
}

}  // namespace graphwave
