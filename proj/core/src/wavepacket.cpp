#include "graphwave/wavepacket.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "graphwave/errors.hpp"
#include "graphwave/fourier.hpp"
#include "graphwave/parallel.hpp"

namespace graphwave {

namespace {

using std::numbers::pi;

void check_grid(const std::vector<double>& s_values) {
  if (s_values.empty()) throw PreconditionError("delay density: empty s-grid");
  for (std::size_t i = 1; i < s_values.size(); ++i)
    if (!(s_values[i] > s_values[i - 1]))
      throw PreconditionError("delay density: s-grid must be strictly ascending");
}

bool uniform_spacing(const std::vector<double>& s, double& step) {
  if (s.size() < 2) {
    step = 0.0;
    return true;
  }
  step = (s.back() - s.front()) / static_cast<double>(s.size() - 1);
  for (std::size_t i = 0; i < s.size(); ++i) {
    double expect = s.front() + step * static_cast<double>(i);
    if (std::abs(s[i] - expect) > 1e-9 * std::max(1.0, std::abs(expect))) return false;
  }
  return true;
}

std::complex<double> unit_phase(long double phase) {
  long double r = std::fmod(phase, 2.0L * std::numbers::pi_v<long double>);
  double p = static_cast<double>(r);
  return {std::cos(p), std::sin(p)};
}

void fill_cumulative(DelayDistribution& dist) {
  dist.cumulative.assign(dist.s.size(), 0.0);
  for (std::size_t i = 1; i < dist.s.size(); ++i)
    dist.cumulative[i] = dist.cumulative[i - 1] + 0.5 * (dist.density[i] + dist.density[i - 1]) *
                                                     (dist.s[i] - dist.s[i - 1]);
}

}  // namespace

double Envelope::value(double k) const {
  double x = (k - k0) / sigma;
  return std::pow(2.0 / (pi * sigma * sigma), 0.25) * std::exp(-x * x);
}

Envelope gaussian_envelope(double k0, double sigma) {
  if (!(k0 > 0.0) || !(sigma > 0.0))
    throw PreconditionError("gaussian_envelope: k0 and sigma must be positive");
  return {k0, sigma, k0 > 2.0 * sigma};
}

DelayDistribution delay_density_fourier(const std::vector<double>& s_values,
                                        const SampledAmplitude& amplitude, const Envelope& env) {
  check_grid(s_values);
  const std::size_t n = amplitude.values.size();
  if (n < 2) throw PreconditionError("delay_density_fourier: need at least two k-samples");
  if (!(amplitude.delta_k > 0.0))
    throw PreconditionError("delay_density_fourier: delta_k must be positive");

  const double k_end = amplitude.k_start + amplitude.delta_k * static_cast<double>(n - 1);
  const double lo_req = std::max(0.0, env.k0 - 8.0 * env.sigma);
  const double hi_req = env.k0 + 8.0 * env.sigma;
  if (amplitude.k_start > lo_req + amplitude.delta_k || k_end < hi_req - amplitude.delta_k)
    throw PreconditionError("delay_density_fourier: k-grid does not cover the envelope support");

  const double s_max = s_values.back();
  if (s_max > 0.0 && amplitude.delta_k > pi / (4.0 * s_max))
    throw PreconditionError(
        "delay_density_fourier: delta_k too coarse for the requested s range; "
        "largest admissible s_max = " +
        std::to_string(pi / (4.0 * amplitude.delta_k)));

  // Trapezoid weights folded into the coefficients.
  std::vector<std::complex<double>> c(n);
  for (std::size_t j = 0; j < n; ++j) {
    double k = amplitude.k_start + amplitude.delta_k * static_cast<double>(j);
    double wgt = (j == 0 || j + 1 == n) ? 0.5 : 1.0;
    c[j] = env.value(k) * amplitude.values[j] * amplitude.delta_k * wgt;
  }

  DelayDistribution dist;
  dist.source = DelayDistribution::Source::Fourier;
  dist.s = s_values;
  const std::size_t m = s_values.size();
  dist.density.assign(m, 0.0);

  double step = 0.0;
  if (uniform_spacing(s_values, step)) {
    const double s0 = s_values.front();
    if (s0 != 0.0) {
      const long double shift = static_cast<long double>(amplitude.delta_k) * s0;
      for (std::size_t j = 0; j < n; ++j)
        c[j] *= std::conj(unit_phase(shift * static_cast<long double>(j)));
    }
    auto f = chirp_transform(c, amplitude.delta_k * step, m);
    for (std::size_t i = 0; i < m; ++i) {
      // the common e^{-i k_start s} phase drops out of |F|^2
      dist.density[i] = std::norm(f[i]) / (2.0 * pi);
    }
  } else {
    if (static_cast<double>(n) * static_cast<double>(m) > 2e8)
      throw NumericError("delay_density_fourier: non-uniform s-grid too large for direct sums");
    parallel_for(m, [&](std::size_t lo, std::size_t hi) {
      for (std::size_t i = lo; i < hi; ++i) {
        std::complex<double> acc = 0.0;
        const long double srel = s_values[i];
        for (std::size_t j = 0; j < n; ++j)
          acc += c[j] * std::conj(unit_phase(static_cast<long double>(amplitude.delta_k) *
                                             static_cast<long double>(j) * srel));
        dist.density[i] = std::norm(acc) / (2.0 * pi);
      }
    });
  }
  fill_cumulative(dist);
  return dist;
}

DelayDistribution delay_density_families(const std::vector<PathFamily>& families,
                                         const Envelope& env,
                                         const std::vector<double>& s_values,
                                         double tail_tolerance) {
  check_grid(s_values);
  double covered = 0.0;
  for (const auto& fam : families) covered += std::norm(fam.amplitude);
  if (1.0 - covered > tail_tolerance)
    throw PreconditionError("delay_density_families: family truncation tail " +
                            std::to_string(1.0 - covered) + " exceeds the tolerance");

  std::vector<std::size_t> order(families.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return families[a].length < families[b].length;
  });

  DelayDistribution dist;
  dist.source = DelayDistribution::Source::Family;
  dist.s = s_values;
  dist.density.assign(s_values.size(), 0.0);

  const double sigma = env.sigma;
  const double length_cut = 26.0 / sigma;   // cross terms beyond this are < e^{-80}
  const double s_window = 13.0 / sigma;     // Gaussian support to keep per pair
  const double peak_norm = sigma / std::sqrt(2.0 * pi);

  for (std::size_t ia = 0; ia < order.size(); ++ia) {
    const PathFamily& fa = families[order[ia]];
    for (std::size_t ib = ia; ib < order.size(); ++ib) {
      const PathFamily& fb = families[order[ib]];
      double dl = fb.length - fa.length;
      if (dl > length_cut) break;
      std::complex<double> cross = fa.amplitude * std::conj(fb.amplitude) *
                                   std::polar(1.0, env.k0 * (fa.length - fb.length)) *
                                   std::exp(-dl * dl * sigma * sigma / 8.0);
      double weight = (ia == ib ? 1.0 : 2.0) * cross.real();
      if (weight == 0.0) continue;
      double center = 0.5 * (fa.length + fb.length);
      auto lo = std::lower_bound(s_values.begin(), s_values.end(), center - s_window);
      auto hi = std::upper_bound(s_values.begin(), s_values.end(), center + s_window);
      for (auto it = lo; it != hi; ++it) {
        double d = (*it - center) * sigma;
        dist.density[it - s_values.begin()] += weight * peak_norm * std::exp(-0.5 * d * d);
      }
    }
  }
  fill_cumulative(dist);
  return dist;
}

}  // namespace graphwave
