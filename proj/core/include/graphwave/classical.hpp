#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

#include "graphwave/exact.hpp"
#include "graphwave/graph.hpp"

namespace graphwave {

// The classical (incoherent) delay distribution is purely atomic: a step
// function over the lengths of escaping paths.
struct ClassicalDistribution {
  std::vector<double> jump_s;            // ascending, duplicates merged
  std::vector<double> jump_mass;
  std::vector<QuadRational> exact_mass;  // parallel to jump_mass
  double horizon = 0.0;                  // requested s_max
  // Mass not delivered to the requested exit channel by the horizon:
  // later exits plus exits through other leads.
  double remainder = 0.0;
  QuadRational exact_remainder;

  // C(s); a jump at exactly s counts as arrived.
  double cumulative(double s) const;
};

// All escape paths with length <= s_max, merged by traversal code, with
// exact sub-Markov weights.  Needs exact vertex matrices; refuses past a
// 1e7 state budget.
ClassicalDistribution classical_cumulative_exact(const MetricGraph& g, int h, int h_in,
                                                 double s_max);

struct McResult {
  std::vector<double> delays;       // one entry per escaped walker, walker order
  std::vector<int> exit_channels;   // parallel to delays
  std::vector<long> channel_tally;  // escapes per lead channel
  long overflow = 0;                // walks stopped at the 1e6-step cap
};

// Samples the classical process: enter with |tau|^2, hop with the
// sub-Markov map, escape with the lead couplings.  Walker i draws from its
// own generator seeded from (seed, i), so results do not depend on the
// thread count.  Escape lengths reuse code_length, making them comparable
// bit for bit with classical_cumulative_exact jump positions.
McResult classical_delay_mc(const MetricGraph& g, int h_in, long sample_count,
                            std::uint64_t seed);

// e^{-zL} Mtilde with L the diagonal matrix of bond lengths.
struct LaplaceMap {
  double z = 0.0;
  Eigen::MatrixXd entries;
};

LaplaceMap laplace_map(const MetricGraph& g, double z);

// det(I - Mtilde(z)).
double laplace_determinant(const MetricGraph& g, double z);

struct DecayLaw {
  double xi = 0.0;
  double prefactor = 0.0;
};

// The unique xi > 0 with det(I - Mtilde(-xi)) = 0, by bracketing and
// bisection to 1e-12.  The long-time classical density decays like
// prefactor * e^{-xi s}.
double decay_constant(const MetricGraph& g);

// A(xi) = sum |tau_out|^2 adj(I - Mtilde(-xi)) e^{xi L} |tau_in|^2
//         / tr[adj(I - Mtilde(-xi)) L Mtilde(-xi)].
double decay_prefactor(const MetricGraph& g, int h, int h_in, double xi);

// C(s) ~ 1 - (A/xi) e^{-xi s}.
double classical_asymptote(const DecayLaw& law, double s);

// Adjugate by explicit cofactors; well behaved at singular arguments.
Eigen::MatrixXd adjugate(const Eigen::MatrixXd& a);

}  // namespace graphwave
