#pragma once

#include <complex>
#include <map>
#include <utility>
#include <vector>

#include "graphwave/exact.hpp"
#include "graphwave/graph.hpp"

namespace graphwave {

// One isometric family: every lead-to-lead path sharing the undirected
// traversal-count code q, and therefore a common metric length.  Exact
// fields are filled when the graph's vertex matrices are exact.
struct PathFamily {
  std::vector<int> code;                 // undirected traversal count per edge
  int crossings = 0;                     // interior vertices crossed; sum(code) == crossings + 1
  double length = 0.0;                   // sum_e code[e] * L_e
  std::complex<double> amplitude{0.0};   // coherent sum over member paths
  double diagonal = 0.0;                 // sum of |A|^2 over member paths
  long member_count = 0;
  bool exact = false;
  QuadComplex exact_amplitude;
  QuadRational exact_diagonal;
};

// Canonical length of a traversal code; classical sampling reuses this exact
// expression so sampled delays and enumerated jump positions compare equal.
double code_length(const MetricGraph& g, const std::vector<int>& code);

// Depth-first enumeration of all directed-bond paths from the entry lead
// h_in to the exit lead h with at most n_max interior crossings, merged into
// families by code.  Refuses (NumericError) beyond a 1e7 path-node budget.
std::vector<PathFamily> enumerate_families(const MetricGraph& g, int h, int h_in, int n_max);

// p_q = |amplitude_sum|^2 per family.  Requires exact families.
std::map<std::vector<int>, QuadRational> family_probabilities(
    const std::vector<PathFamily>& families);

struct DiagonalSplit {
  QuadRational diagonal;     // incoherent part: sum |A|^2
  QuadRational nondiagonal;  // p_q minus the diagonal part; may be negative
};

std::map<std::vector<int>, DiagonalSplit> diagonal_split(const std::vector<PathFamily>& families);

// Distribution of the discrete (topological) delay time.
struct TopologicalDistribution {
  std::vector<BigRational> p;  // p[t]
  std::vector<BigRational> c;  // running sums of p
};

// How discrete time converts to length: the two-edge junction counts
// excursions of length 2*ell each; the general rule counts edge traversals,
// each of length ell.
enum class TopologicalTime { Excursions, EdgeTraversals };

// C(s, ell) = sum of p_t over all t whose converted length is <= s
// (a path of length exactly s counts as arrived).
double topological_cumulative(const TopologicalDistribution& dist, double s, double ell,
                              TopologicalTime convention = TopologicalTime::Excursions);

// (C(s, L_max), C(s, L_min)): lower and upper bounds for the metric C(s).
std::pair<double, double> metric_bounds(const TopologicalDistribution& dist, double s,
                                        double L_min, double L_max,
                                        TopologicalTime convention = TopologicalTime::Excursions);

// Exact p_t for the balanced two-edge junction:
// p_0 = 0, p_1 = 1/2, p_t = 12 C(2t-4, t-2) / (t (t-1) 4^t).
BigRational tjunction_pt(long t);

// Its cumulative: c_t = 1 - (2 / (4^t t)) C(2t-2, t-1), t >= 1.
BigRational tjunction_ct(long t);

// p and c filled from the closed forms above, t = 0..t_max.
TopologicalDistribution tjunction_topological(long t_max);

// Families grouped by discrete time with exact probability and split parts.
struct TimeGroup {
  QuadRational p;
  QuadRational diagonal;
  QuadRational nondiagonal;
};
std::map<long, TimeGroup> group_families_by_time(const std::vector<PathFamily>& families,
                                                 TopologicalTime convention);

}  // namespace graphwave
