#include "graphwave/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "graphwave/errors.hpp"

namespace graphwave {

namespace {

using std::numbers::pi;

Eigen::MatrixXcd assemble(const MetricGraph& g, double k) {
  Eigen::MatrixXcd u = g.amplitude_matrix();
  for (int d = 0; d < g.bond_count(); ++d)
    u.row(d) *= std::polar(1.0, k * g.bond_length(d));
  return u;
}

// Sum of the principal arguments of the eigenvalues of -U(k).
double eigenphase_sum(const MetricGraph& g, double k) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(assemble(g, k), false);
  double sum = 0.0;
  for (int j = 0; j < es.eigenvalues().size(); ++j) sum += std::arg(-es.eigenvalues()[j]);
  return sum;
}

void require_compact(const MetricGraph& g) {
  if (g.open()) throw PreconditionError("operation needs a compact graph (no leads)");
}

struct SpectrumScan {
  const MetricGraph& g;
  std::vector<double>& roots;

  int count(double a, double phase_a, double b, double phase_b) const {
    double winding = (2.0 * (b - a) * g.total_length() - (phase_b - phase_a)) / (2.0 * pi);
    return static_cast<int>(std::lround(winding));
  }

  // Invariant: the cell (a, b] holds exactly n roots.
  void resolve(double a, double phase_a, double b, double phase_b, int n, int depth) const {
    if (n <= 0) return;
    if (b - a < 1e-10) {
      double mid = 0.5 * (a + b);
      roots.insert(roots.end(), n, mid);
      return;
    }
    if (depth > 120) throw NumericError("spectrum refinement failed to converge");
    double m = 0.5 * (a + b);
    double phase_m = eigenphase_sum(g, m);
    int left = count(a, phase_a, m, phase_m);
    resolve(a, phase_a, m, phase_m, left, depth + 1);
    resolve(m, phase_m, b, phase_b, n - left, depth + 1);
  }
};

}  // namespace

EvolutionOperator evolution_operator(const MetricGraph& g, double k) {
  require_compact(g);
  return {k, assemble(g, k)};
}

std::complex<double> secular_value(const MetricGraph& g, double k) {
  require_compact(g);
  Eigen::MatrixXcd m = -assemble(g, k);
  m.diagonal().array() += 1.0;
  return m.determinant();
}

double secular_indicator(const MetricGraph& g, double k) {
  require_compact(g);
  double alpha = std::arg(g.amplitude_matrix().determinant());
  std::complex<double> det = secular_value(g, k);
  std::complex<double> phase = std::polar(1.0, -(k * g.total_length() + 0.5 * alpha));
  std::complex<double> scale = std::pow(std::complex<double>(0.0, -2.0), g.bond_count());
  return (det * phase / scale).real();
}

int count_spectrum(const MetricGraph& g, double k_lo, double k_hi) {
  require_compact(g);
  if (k_hi <= k_lo) return 0;
  double winding = (2.0 * (k_hi - k_lo) * g.total_length() -
                    (eigenphase_sum(g, k_hi) - eigenphase_sum(g, k_lo))) /
                   (2.0 * std::numbers::pi);
  return static_cast<int>(std::lround(winding));
}

std::vector<double> find_spectrum(const MetricGraph& g, double k_min, double k_max) {
  return find_spectrum(g, k_min, k_max, 0.1 * std::numbers::pi / g.total_length());
}

std::vector<double> find_spectrum(const MetricGraph& g, double k_min, double k_max,
                                  double grid_step) {
  require_compact(g);
  if (k_min < 0) throw PreconditionError("find_spectrum: k_min must be non-negative");
  if (!(grid_step > 0)) throw PreconditionError("find_spectrum: grid step must be positive");
  std::vector<double> roots;
  if (k_max <= k_min) return roots;

  // Skip the trivial root at k = 0 (constant mode); counting starts just above.
  double lo = k_min == 0.0 ? 1e-9 : k_min;
  if (k_max <= lo) return roots;

  SpectrumScan scan{g, roots};
  int cells = std::max(1, static_cast<int>(std::ceil((k_max - lo) / grid_step)));
  double a = lo;
  double phase_a = eigenphase_sum(g, a);
  for (int c = 0; c < cells; ++c) {
    double b = c + 1 == cells ? k_max : lo + (k_max - lo) * (c + 1) / cells;
    double phase_b = eigenphase_sum(g, b);
    scan.resolve(a, phase_a, b, phase_b, scan.count(a, phase_a, b, phase_b), 0);
    a = b;
    phase_a = phase_b;
  }
  return roots;
}

ClassicalMap classical_map(const MetricGraph& g) {
  return {g.amplitude_matrix().cwiseAbs2()};
}

Eigen::VectorXd propagate_classical(const Eigen::VectorXd& p0, const ClassicalMap& m, int t) {
  if (t < 0) throw PreconditionError("propagate_classical: t must be non-negative");
  if (p0.size() != m.entries.rows())
    throw PreconditionError("propagate_classical: vector size does not match the map");
  if (p0.minCoeff() < -1e-12 || p0.sum() > 1.0 + 1e-9)
    throw PreconditionError("propagate_classical: p0 is not a (sub-)probability vector");
  Eigen::VectorXd p = p0;
  for (int i = 0; i < t; ++i) p = m.entries * p;
  return p;
}

}  // namespace graphwave
