#include "graphwave/classical.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

#include "graphwave/errors.hpp"
#include "graphwave/evolution.hpp"
#include "graphwave/parallel.hpp"
#include "graphwave/paths.hpp"

namespace graphwave {

namespace {

constexpr long kStateBudget = 10'000'000;
constexpr long kStepCap = 1'000'000;

void require_open(const MetricGraph& g) {
  if (!g.open()) throw PreconditionError("operation needs an open graph (>= 1 lead)");
}

struct SplitMix64 {
  std::uint64_t state;

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

// Scrambled per-walker start so consecutive walkers get unrelated streams.
std::uint64_t walker_seed(std::uint64_t seed, long walker) {
  SplitMix64 s{seed ^ (0x9E3779B97F4A7C15ull * static_cast<std::uint64_t>(walker + 1))};
  return s.next();
}

}  // namespace

double ClassicalDistribution::cumulative(double s) const {
  auto it = std::upper_bound(jump_s.begin(), jump_s.end(), s);
  double c = 0.0;
  for (auto j = jump_s.begin(); j != it; ++j) c += jump_mass[j - jump_s.begin()];
  return c;
}

ClassicalDistribution classical_cumulative_exact(const MetricGraph& g, int h, int h_in,
                                                 double s_max) {
  require_open(g);
  if (!g.exact())
    throw PreconditionError("classical_cumulative_exact needs exact vertex matrices");
  if (!(s_max >= 0)) throw PreconditionError("classical_cumulative_exact: s_max must be >= 0");
  const int entry_vertex = g.lead_vertex(h_in);
  g.lead_vertex(h);  // validates the exit channel

  using Key = std::pair<int, std::vector<int>>;  // bond about to be traversed, code so far
  std::map<Key, QuadRational> level;
  const std::vector<int> zero(g.edge_count(), 0);
  for (int d : g.outgoing_bonds(entry_vertex)) {
    QuadRational w = g.exact_lead_to_bond(d, h_in).squared_modulus();
    if (!w.is_zero()) level[{d, zero}] += w;
  }

  std::map<std::vector<int>, QuadRational> jumps;
  if (h == h_in) {
    QuadRational rho2 = g.exact_lead_reflection(h_in).squared_modulus();
    if (!rho2.is_zero()) jumps[zero] += rho2;
  }

  long processed = 0;
  while (!level.empty()) {
    std::map<Key, QuadRational> next_level;
    for (auto& [key, mass] : level) {
      if (++processed > kStateBudget)
        throw NumericError("classical_cumulative_exact: state budget (1e7) exceeded");
      const auto& [d, q] = key;
      std::vector<int> q2 = q;
      ++q2[d / 2];
      if (code_length(g, q2) > s_max) continue;
      int v = g.terminus(d);
      if (auto lead = g.lead_at(v); lead && *lead == h) {
        QuadRational w = g.exact_bond_to_lead(h, d).squared_modulus();
        if (!w.is_zero()) jumps[q2] += mass * w;
      }
      for (int dn : g.outgoing_bonds(v)) {
        QuadRational w = g.exact_amplitude(dn, d).squared_modulus();
        if (!w.is_zero()) next_level[{dn, q2}] += mass * w;
      }
    }
    level = std::move(next_level);
  }

  std::vector<std::pair<double, QuadRational>> ordered;
  ordered.reserve(jumps.size());
  for (auto& [code, mass] : jumps) ordered.emplace_back(code_length(g, code), mass);
  std::sort(ordered.begin(), ordered.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  ClassicalDistribution dist;
  dist.horizon = s_max;
  QuadRational total = 0;
  for (auto& [s, mass] : ordered) {
    total += mass;
    if (!dist.jump_s.empty() && dist.jump_s.back() == s) {
      dist.exact_mass.back() += mass;
      dist.jump_mass.back() = dist.exact_mass.back().value();
    } else {
      dist.jump_s.push_back(s);
      dist.exact_mass.push_back(mass);
      dist.jump_mass.push_back(mass.value());
    }
  }
  dist.exact_remainder = QuadRational(1) - total;
  dist.remainder = dist.exact_remainder.value();
  return dist;
}

McResult classical_delay_mc(const MetricGraph& g, int h_in, long sample_count,
                            std::uint64_t seed) {
  require_open(g);
  if (sample_count < 0) throw PreconditionError("classical_delay_mc: negative sample count");
  const int entry_vertex = g.lead_vertex(h_in);
  const int D = g.bond_count();
  const int E = g.edge_count();

  const double rho2 = std::norm(g.lead_reflection(h_in));
  std::vector<int> entry_bonds;
  std::vector<double> entry_w;
  for (int d : g.outgoing_bonds(entry_vertex)) {
    entry_bonds.push_back(d);
    entry_w.push_back(std::norm(g.lead_to_bond(d, h_in)));
  }

  struct BondMoves {
    int lead = -1;       // exit channel available at the terminus, if any
    double exit_p = 0.0;
    std::vector<int> to;
    std::vector<double> p;
  };
  Eigen::MatrixXd mt = classical_map(g).entries;
  std::vector<BondMoves> moves(D);
  for (int d = 0; d < D; ++d) {
    int v = g.terminus(d);
    if (auto lead = g.lead_at(v)) {
      moves[d].lead = *lead;
      moves[d].exit_p = std::norm(g.bond_to_lead(*lead, d));
    }
    for (int dn : g.outgoing_bonds(v)) {
      moves[d].to.push_back(dn);
      moves[d].p.push_back(mt(dn, d));
    }
  }

  // Walker i writes only slot i; chunking cannot change the outcome.
  std::vector<double> delay(sample_count);
  std::vector<int> channel(sample_count);
  parallel_for(static_cast<std::size_t>(sample_count), [&](std::size_t lo, std::size_t hi) {
    std::vector<int> code(E);
    for (std::size_t i = lo; i < hi; ++i) {
      SplitMix64 rng{walker_seed(seed, static_cast<long>(i))};
      double u = rng.uniform();
      if (u < rho2) {
        delay[i] = 0.0;
        channel[i] = h_in;
        continue;
      }
      u -= rho2;
      int d = entry_bonds.back();
      for (std::size_t j = 0; j + 1 < entry_bonds.size(); ++j) {
        if (u < entry_w[j]) {
          d = entry_bonds[j];
          break;
        }
        u -= entry_w[j];
      }

      std::fill(code.begin(), code.end(), 0);
      long steps = 0;
      channel[i] = -1;  // overflow unless the walk escapes
      while (steps++ < kStepCap) {
        ++code[d / 2];
        const BondMoves& mv = moves[d];
        u = rng.uniform();
        if (mv.lead >= 0) {
          if (u < mv.exit_p) {
            delay[i] = code_length(g, code);
            channel[i] = mv.lead;
            break;
          }
          u -= mv.exit_p;
        }
        int next = mv.to.back();
        for (std::size_t j = 0; j + 1 < mv.to.size(); ++j) {
          if (u < mv.p[j]) {
            next = mv.to[j];
            break;
          }
          u -= mv.p[j];
        }
        d = next;
      }
    }
  });

  McResult res;
  res.channel_tally.assign(g.lead_count(), 0);
  res.delays.reserve(sample_count);
  res.exit_channels.reserve(sample_count);
  for (long i = 0; i < sample_count; ++i) {
    if (channel[i] < 0) {
      ++res.overflow;
    } else {
      res.delays.push_back(delay[i]);
      res.exit_channels.push_back(channel[i]);
      ++res.channel_tally[channel[i]];
    }
  }
  return res;
}

LaplaceMap laplace_map(const MetricGraph& g, double z) {
  require_open(g);
  Eigen::MatrixXd m = classical_map(g).entries;
  for (int d = 0; d < g.bond_count(); ++d) m.row(d) *= std::exp(-z * g.bond_length(d));
  return {z, m};
}

double laplace_determinant(const MetricGraph& g, double z) {
  Eigen::MatrixXd a = -laplace_map(g, z).entries;
  a.diagonal().array() += 1.0;
  return a.determinant();
}

double decay_constant(const MetricGraph& g) {
  if (!g.open())
    throw PreconditionError("decay_constant: closed graph has no escape (xi would be 0)");
  Eigen::MatrixXd mt = classical_map(g).entries;
  double radius = mt.eigenvalues().cwiseAbs().maxCoeff();
  if (radius >= 1.0 - 1e-12)
    throw PreconditionError("decay_constant: sub-Markov map does not contract (no escape)");

  double hi = 1.0 / g.max_edge_length();
  while (laplace_determinant(g, -hi) > 0) {
    hi *= 2.0;
    if (hi > 1e6) throw NumericError("decay_constant: bracketing failed");
  }
  double lo = 0.0;
  while (hi - lo > 1e-13) {
    double mid = 0.5 * (lo + hi);
    (laplace_determinant(g, -mid) > 0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

Eigen::MatrixXd adjugate(const Eigen::MatrixXd& a) {
  const int n = static_cast<int>(a.rows());
  if (n == 1) return Eigen::MatrixXd::Ones(1, 1);
  Eigen::MatrixXd adj(n, n);
  Eigen::MatrixXd minor(n - 1, n - 1);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      for (int i = 0; i < n - 1; ++i)
        for (int j = 0; j < n - 1; ++j)
          minor(i, j) = a(i < r ? i : i + 1, j < c ? j : j + 1);
      double cof = minor.determinant();
      adj(c, r) = ((r + c) % 2 == 0) ? cof : -cof;  // transposed cofactor
    }
  }
  return adj;
}

double decay_prefactor(const MetricGraph& g, int h, int h_in, double xi) {
  require_open(g);
  Eigen::MatrixXd mz = laplace_map(g, -xi).entries;
  Eigen::MatrixXd a = Eigen::MatrixXd::Identity(g.bond_count(), g.bond_count()) - mz;
  Eigen::MatrixXd adj = adjugate(a);

  double den = 0.0;
  Eigen::MatrixXd lm = mz;
  for (int d = 0; d < g.bond_count(); ++d) lm.row(d) *= g.bond_length(d);
  den = (adj * lm).trace();
  if (std::abs(den) < 1e-14)
    throw NumericError("decay_prefactor: degenerate zero of the determinant");

  double num = 0.0;
  for (int d = 0; d < g.bond_count(); ++d) {
    double out_w = std::norm(g.bond_to_lead(h, d));
    if (out_w == 0.0) continue;
    for (int dp = 0; dp < g.bond_count(); ++dp) {
      double in_w = std::norm(g.lead_to_bond(dp, h_in));
      if (in_w == 0.0) continue;
      num += out_w * adj(d, dp) * std::exp(xi * g.bond_length(dp)) * in_w;
    }
  }
  return num / den;
}

double classical_asymptote(const DecayLaw& law, double s) {
  return 1.0 - law.prefactor / law.xi * std::exp(-law.xi * s);
}

}  // namespace graphwave
