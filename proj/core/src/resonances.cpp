#include "graphwave/resonances.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/LU>

#include "graphwave/errors.hpp"
#include "graphwave/parallel.hpp"

namespace graphwave {

namespace {

using std::numbers::pi;
using Complex = std::complex<double>;

// Far along the real axis the bond phases 2 z L carry O(|z| eps) rounding,
// so no residual test with a fixed absolute floor can be met there.  A
// Newton step at that rounding scale means the root is as good as doubles
// allow.
bool step_converged(Complex step, Complex z) {
  return std::abs(step) <
         64.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(z));
}

Complex closed_secular(double l1, double l2, Complex z) {
  const Complex i2(0.0, 2.0);
  return 1.0 - 0.5 * (std::exp(i2 * z * l1) + std::exp(i2 * z * l2));
}

Complex closed_secular_derivative(double l1, double l2, Complex z) {
  const Complex i2(0.0, 2.0);
  return Complex(0.0, -1.0) *
         (l1 * std::exp(i2 * z * l1) + l2 * std::exp(i2 * z * l2));
}

Eigen::MatrixXcd open_map_complex(const MetricGraph& g, Complex z) {
  Eigen::MatrixXcd w = g.amplitude_matrix();
  for (int d = 0; d < g.bond_count(); ++d)
    w.row(d) *= std::exp(Complex(0.0, 1.0) * z * g.bond_length(d));
  return w;
}

// Winding-number census of det(I - W(z)) over axis-aligned rectangles.
struct PoleScan {
  const MetricGraph& g;
  Eigen::VectorXd lengths;
  double base_step;  // safe boundary step against the fastest phase
  std::vector<Complex> roots;

  explicit PoleScan(const MetricGraph& graph) : g(graph) {
    lengths = Eigen::VectorXd(g.bond_count());
    for (int d = 0; d < g.bond_count(); ++d) lengths[d] = g.bond_length(d);
    base_step = 0.25 / lengths.sum();
  }

  Complex value(Complex z) const {
    Eigen::MatrixXcd a =
        Eigen::MatrixXcd::Identity(g.bond_count(), g.bond_count()) -
        open_map_complex(g, z);
    return a.partialPivLu().determinant();
  }

  double arg_along(Complex a, Complex b, Complex fa, Complex fb, int depth) const {
    double d = std::arg(fb / fa);
    if (std::abs(d) < 0.5 * pi && std::abs(b - a) <= base_step) return d;
    if (depth > 48) throw NumericError("find_poles: boundary walk failed to resolve");
    Complex mid = a + 0.5 * (b - a);
    Complex fm = value(mid);
    if (std::abs(fm) < 1e-250)
      throw NumericError("find_poles: zero on a scan boundary");
    return arg_along(a, mid, fa, fm, depth + 1) +
           arg_along(mid, b, fm, fb, depth + 1);
  }

  long zero_count(Complex sw, Complex ne) const {
    Complex se(ne.real(), sw.imag());
    Complex nw(sw.real(), ne.imag());
    Complex fsw = value(sw), fse = value(se), fne = value(ne), fnw = value(nw);
    double total = arg_along(sw, se, fsw, fse, 0) + arg_along(se, ne, fse, fne, 0) +
                   arg_along(ne, nw, fne, fnw, 0) + arg_along(nw, sw, fnw, fsw, 0);
    double turns = total / (2.0 * pi);
    long n = std::lround(turns);
    if (std::abs(turns - n) > 0.25)
      throw NumericError("find_poles: non-integer winding number");
    return n;
  }

  bool newton(Complex& z) const {
    for (int it = 0; it < 60; ++it) {
      Eigen::MatrixXcd w = open_map_complex(g, z);
      Eigen::MatrixXcd a =
          Eigen::MatrixXcd::Identity(g.bond_count(), g.bond_count()) - w;
      Eigen::PartialPivLU<Eigen::MatrixXcd> lu(a);
      if (std::abs(lu.determinant()) < 1e-12) return true;
      Eigen::MatrixXcd ap = w;
      for (int d = 0; d < g.bond_count(); ++d) ap.row(d) *= Complex(0.0, -lengths[d]);
      Complex tr = lu.solve(ap).trace();
      if (!(std::abs(tr) > 0.0) || !std::isfinite(std::abs(tr))) return false;
      Complex step = 1.0 / tr;
      z -= step;
      if (step_converged(step, z)) return true;
    }
    return false;
  }

  void resolve(Complex sw, Complex ne, long count, int depth) {
    if (count <= 0) return;
    if (depth > 80) throw NumericError("find_poles: rectangle subdivision too deep");
    double wk = ne.real() - sw.real();
    double wg = ne.imag() - sw.imag();
    if (count == 1) {
      Complex z = sw + 0.5 * Complex(wk, wg);
      if (newton(z) && z.real() > sw.real() - 1e-7 && z.real() < ne.real() + 1e-7 &&
          z.imag() > sw.imag() - 1e-7 && z.imag() < ne.imag() + 1e-7) {
        roots.push_back(z);
        return;
      }
    }
    // split across the wider side, nudging off any near-zero midline
    bool split_k = wk > wg;
    double ratio = 0.5;
    Complex mid_ne, mid_sw;
    for (int attempt = 0; attempt < 3; ++attempt) {
      if (split_k) {
        double km = sw.real() + ratio * wk;
        mid_ne = Complex(km, ne.imag());
        mid_sw = Complex(km, sw.imag());
      } else {
        double gm = sw.imag() + ratio * wg;
        mid_ne = Complex(ne.real(), gm);
        mid_sw = Complex(sw.real(), gm);
      }
      if (std::abs(value(0.5 * (mid_sw + mid_ne))) > 1e-100) break;
      ratio = (attempt == 0) ? 0.513 : 0.487;
    }
    long c1 = zero_count(sw, mid_ne);
    long c2 = zero_count(mid_sw, ne);
    if (c1 + c2 != count) throw NumericError("find_poles: winding counts disagree");
    resolve(sw, mid_ne, c1, depth + 1);
    resolve(mid_sw, ne, c2, depth + 1);
  }
};

}  // namespace

std::vector<PhasePair> near_degenerate_pairs(double l1, double l2, double k_min,
                                             double k_max, double threshold) {
  if (!(l1 > 0.0) || !(l2 > l1))
    throw PreconditionError("near_degenerate_pairs: need 0 < L1 < L2");
  if (!std::isfinite(k_min) || !std::isfinite(k_max) || !(threshold > 0.0))
    throw PreconditionError("near_degenerate_pairs: bad range or threshold");
  std::vector<PhasePair> pairs;
  if (k_max <= k_min) return pairs;
  long m1_lo = std::max(1L, static_cast<long>(std::ceil(k_min * l1 / pi)));
  long m1_hi = static_cast<long>(std::floor(k_max * l1 / pi));
  long spread = static_cast<long>(std::ceil(threshold * l2 / pi));
  for (long m1 = m1_lo; m1 <= m1_hi; ++m1) {
    double k1 = pi * static_cast<double>(m1) / l1;
    long m2_mid = std::lround(k1 * l2 / pi);
    for (long m2 = m2_mid - spread; m2 <= m2_mid + spread; ++m2) {
      if (m2 < 1) continue;
      double k2 = pi * static_cast<double>(m2) / l2;
      if (k2 < k_min || k2 > k_max) continue;
      double gap = std::abs(k2 - k1);
      if (gap >= threshold) continue;
      PhasePair p{k1, k2, gap < 1e-12 * std::max(1.0, k1)};
      pairs.push_back(p);
    }
  }
  return pairs;
}

ResonancePole pole_from_pair(double k1, double k2, double l1, double l2) {
  if (!(l1 > 0.0) || !(l2 > 0.0))
    throw PreconditionError("pole_from_pair: lengths must be positive");
  ResonancePole pole;
  pole.k1 = k1;
  pole.k2 = k2;
  pole.total_length = l1 + l2;
  pole.lambda = l1 * l2 / pole.total_length;
  pole.delta_k = std::abs(k2 - k1);
  pole.kappa = (k1 * l1 + k2 * l2) / pole.total_length;
  pole.gamma = 2.0 * pole.lambda * pole.lambda * pole.delta_k * pole.delta_k /
               pole.total_length;
  pole.seed_valid = pole.delta_k * pole.lambda < 0.5;
  pole.refined = false;
  return pole;
}

bool refine_pole(double l1, double l2, ResonancePole& pole) {
  Complex z(pole.kappa, -pole.gamma);
  bool converged = false;
  for (int it = 0; it < 50; ++it) {
    Complex f = closed_secular(l1, l2, z);
    if (std::abs(f) < 1e-12) {
      converged = true;
      break;
    }
    Complex fp = closed_secular_derivative(l1, l2, z);
    if (!(std::abs(fp) > 0.0)) break;
    Complex step = f / fp;
    z -= step;
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) break;
    if (step_converged(step, z)) {
      converged = true;
      break;
    }
  }
  if (!converged || !(-z.imag() > 0.0)) {
    pole.refined = false;
    return false;
  }
  pole.kappa = z.real();
  pole.gamma = -z.imag();
  pole.refined = true;
  return true;
}

bool refine_pole(const MetricGraph& g, ResonancePole& pole) {
  if (!g.open()) throw PreconditionError("refine_pole: graph has no leads");
  PoleScan scan(g);
  Complex z(pole.kappa, -pole.gamma);
  if (!scan.newton(z) || !(-z.imag() > 0.0)) {
    pole.refined = false;
    return false;
  }
  pole.kappa = z.real();
  pole.gamma = -z.imag();
  pole.refined = true;
  return true;
}

std::vector<Complex> find_poles(const MetricGraph& g, double k_min, double k_max,
                                double gamma_max) {
  if (!g.open()) throw PreconditionError("find_poles: graph has no leads");
  if (!(gamma_max > 0.0)) throw PreconditionError("find_poles: gamma_max must be positive");
  if (!(k_max > k_min)) throw PreconditionError("find_poles: empty range");
  double lo = std::max(k_min, 1e-9);  // z = 0 is a removable zero, not a pole
  PoleScan scan(g);
  // Top-level boxes sized for a few dozen expected roots each.
  double edge_sum = 0.0;
  for (int e = 0; e < g.edge_count(); ++e) edge_sum += g.edge_length(e);
  double width = std::min(k_max - lo, 40.0 * pi / edge_sum);
  long boxes = std::max(1L, std::lround(std::ceil((k_max - lo) / width)));
  for (long b = 0; b < boxes; ++b) {
    double a = lo + (k_max - lo) * static_cast<double>(b) / static_cast<double>(boxes);
    double c = lo + (k_max - lo) * static_cast<double>(b + 1) / static_cast<double>(boxes);
    Complex sw(a, -gamma_max), ne(c, 0.0);
    scan.resolve(sw, ne, scan.zero_count(sw, ne), 0);
  }
  std::sort(scan.roots.begin(), scan.roots.end(), [](Complex a, Complex b) {
    return a.real() < b.real();
  });
  // adjacent boxes can both polish a root that sits next to a shared edge
  std::vector<Complex> out;
  for (Complex z : scan.roots) {
    if (!out.empty() && std::abs(z - out.back()) < 1e-7) continue;
    out.push_back(z);
  }
  return out;
}

double resonance_density(double gamma, double total_length) {
  if (!(gamma > 0.0)) throw PreconditionError("resonance_density: gamma must be positive");
  double l3 = total_length * total_length * total_length;
  return std::sqrt(l3 / (2.0 * gamma)) / (pi * pi);
}

double longtime_cumulative_resonances(const std::vector<ResonancePole>& poles,
                                      const Envelope& env, double s) {
  if (s > env.sigma * env.sigma)
    throw PreconditionError(
        "longtime_cumulative_resonances: s beyond the validity ceiling s ~ sigma^2");
  double tail = 0.0;
  for (const auto& pole : poles) {
    double w = env.value(pole.kappa);
    tail += w * w * pole.gamma * std::exp(-2.0 * pole.gamma * s);
  }
  return 1.0 - 4.0 * pi * tail;
}

double longtime_cumulative_integral(double total_length, double s) {
  if (!(total_length > 0.0))
    throw PreconditionError("longtime_cumulative_integral: length must be positive");
  return 1.0 - std::pow(s / total_length, -1.5) / std::sqrt(4.0 * pi);
}

}  // namespace graphwave
