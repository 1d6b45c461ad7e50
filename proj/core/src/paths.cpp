#include "graphwave/paths.hpp"

#include <string>

#include "graphwave/errors.hpp"

namespace graphwave {

namespace {

constexpr long kPathBudget = 10'000'000;

struct Enumerator {
  const MetricGraph& g;
  int exit_channel;
  int exit_vertex;
  int n_max;
  bool exact;
  long visited = 0;
  std::vector<int> code;
  std::map<std::vector<int>, PathFamily>& out;

  void record(int d, int bonds, std::complex<double> a, const QuadComplex& ax) {
    std::complex<double> full = a * g.bond_to_lead(exit_channel, d);
    PathFamily& fam = out[code];
    if (fam.member_count == 0) {
      fam.code = code;
      fam.crossings = bonds - 1;
      fam.length = code_length(g, code);
      fam.exact = exact;
    }
    fam.amplitude += full;
    fam.diagonal += std::norm(full);
    ++fam.member_count;
    if (exact) {
      QuadComplex fx = ax * g.exact_bond_to_lead(exit_channel, d);
      fam.exact_amplitude += fx;
      fam.exact_diagonal += fx.squared_modulus();
    }
  }

  // One pending bond per tree level; the DFS is explicit so a huge n_max
  // runs into the budget, not the call stack.
  struct Frame {
    int d;
    int bonds;
    std::complex<double> a;
    QuadComplex ax;
    std::size_t next = 0;
  };

  void enter(std::vector<Frame>& stack, int d, int bonds, std::complex<double> a,
             QuadComplex ax) {
    if (++visited > kPathBudget)
      throw NumericError("enumerate_families: path budget (1e7) exceeded; lower n_max");
    ++code[d / 2];
    if (g.terminus(d) == exit_vertex) record(d, bonds, a, ax);
    stack.push_back(Frame{d, bonds, a, std::move(ax)});
  }

  void walk(int d0, std::complex<double> a0, QuadComplex ax0) {
    std::vector<Frame> stack;
    enter(stack, d0, 1, a0, std::move(ax0));
    while (!stack.empty()) {
      Frame& f = stack.back();
      const std::vector<int>& outs = g.outgoing_bonds(g.terminus(f.d));
      if (f.bonds > n_max || f.next >= outs.size()) {
        --code[f.d / 2];
        stack.pop_back();
        continue;
      }
      int dn = outs[f.next++];
      std::complex<double> a = f.a * g.amplitude(dn, f.d);
      QuadComplex ax = exact ? f.ax * g.exact_amplitude(dn, f.d) : QuadComplex{};
      int bonds = f.bonds + 1;
      enter(stack, dn, bonds, a, std::move(ax));  // may reallocate; f is dead here
    }
  }
};

long excursion_count(long total) {
  if (total % 2 != 0)
    throw PreconditionError("excursion convention needs an even traversal count");
  return total / 2;
}

}  // namespace

double code_length(const MetricGraph& g, const std::vector<int>& code) {
  if (static_cast<int>(code.size()) != g.edge_count())
    throw PreconditionError("code_length: one traversal count per edge expected");
  double length = 0.0;
  for (int e = 0; e < g.edge_count(); ++e) length += code[e] * g.edge_length(e);
  return length;
}

std::vector<PathFamily> enumerate_families(const MetricGraph& g, int h, int h_in, int n_max) {
  if (!g.open()) throw PreconditionError("enumerate_families needs an open graph");
  if (n_max < 0) throw PreconditionError("enumerate_families: n_max must be non-negative");
  const int entry_vertex = g.lead_vertex(h_in);
  const int exit_vertex = g.lead_vertex(h);

  std::map<std::vector<int>, PathFamily> acc;
  Enumerator en{g, h, exit_vertex, n_max, g.exact(), 0,
                std::vector<int>(g.edge_count(), 0), acc};
  for (int d0 : g.outgoing_bonds(entry_vertex))
    en.walk(d0, g.lead_to_bond(d0, h_in),
            en.exact ? g.exact_lead_to_bond(d0, h_in) : QuadComplex{});

  std::vector<PathFamily> families;
  families.reserve(acc.size());
  for (auto& [ignored, fam] : acc) families.push_back(std::move(fam));
  return families;
}

std::map<std::vector<int>, QuadRational> family_probabilities(
    const std::vector<PathFamily>& families) {
  std::map<std::vector<int>, QuadRational> p;
  for (const auto& fam : families) {
    if (!fam.exact)
      throw PreconditionError("family_probabilities needs exact family amplitudes");
    p[fam.code] = fam.exact_amplitude.squared_modulus();
  }
  return p;
}

std::map<std::vector<int>, DiagonalSplit> diagonal_split(
    const std::vector<PathFamily>& families) {
  std::map<std::vector<int>, DiagonalSplit> split;
  for (const auto& fam : families) {
    if (!fam.exact) throw PreconditionError("diagonal_split needs exact family amplitudes");
    QuadRational pq = fam.exact_amplitude.squared_modulus();
    split[fam.code] = {fam.exact_diagonal, pq - fam.exact_diagonal};
  }
  return split;
}

double topological_cumulative(const TopologicalDistribution& dist, double s, double ell,
                              TopologicalTime convention) {
  if (!(ell > 0)) throw PreconditionError("topological_cumulative: ell must be positive");
  double step = convention == TopologicalTime::Excursions ? 2.0 * ell : ell;
  double c = 0.0;
  for (std::size_t t = 0; t < dist.p.size(); ++t) {
    if (static_cast<double>(t) * step > s) return c;
    c += to_double(dist.p[t]);
  }
  // Every tabulated time fits below s: the table must extend past s.
  if (static_cast<double>(dist.p.size()) * step <= s)
    throw PreconditionError("topological_cumulative: distribution truncated before s");
  return c;
}

std::pair<double, double> metric_bounds(const TopologicalDistribution& dist, double s,
                                        double L_min, double L_max,
                                        TopologicalTime convention) {
  if (L_min > L_max) throw PreconditionError("metric_bounds: L_min exceeds L_max");
  return {topological_cumulative(dist, s, L_max, convention),
          topological_cumulative(dist, s, L_min, convention)};
}

BigRational tjunction_pt(long t) {
  if (t < 0) throw PreconditionError("tjunction_pt: t must be non-negative");
  if (t == 0) return 0;
  if (t == 1) return BigRational(1, 2);
  BigInt den = (BigInt(1) << (2 * t)) * t * (t - 1);
  return BigRational(12 * binomial(2 * t - 4, t - 2), den);
}

BigRational tjunction_ct(long t) {
  if (t < 1) throw PreconditionError("tjunction_ct: t must be at least 1");
  BigInt den = (BigInt(1) << (2 * t)) * t;
  return 1 - BigRational(2 * binomial(2 * t - 2, t - 1), den);
}

TopologicalDistribution tjunction_topological(long t_max) {
  if (t_max < 0) throw PreconditionError("tjunction_topological: t_max must be non-negative");
  TopologicalDistribution dist;
  dist.p.reserve(t_max + 1);
  dist.c.reserve(t_max + 1);
  BigRational run = 0;
  for (long t = 0; t <= t_max; ++t) {
    dist.p.push_back(tjunction_pt(t));
    run += dist.p.back();
    dist.c.push_back(run);
  }
  return dist;
}

std::map<long, TimeGroup> group_families_by_time(const std::vector<PathFamily>& families,
                                                 TopologicalTime convention) {
  std::map<long, TimeGroup> groups;
  for (const auto& fam : families) {
    if (!fam.exact) throw PreconditionError("group_families_by_time needs exact families");
    long total = 0;
    for (int q : fam.code) total += q;
    long t = convention == TopologicalTime::Excursions ? excursion_count(total) : total;
    TimeGroup& grp = groups[t];
    QuadRational pq = fam.exact_amplitude.squared_modulus();
    grp.p += pq;
    grp.diagonal += fam.exact_diagonal;
    grp.nondiagonal += pq - fam.exact_diagonal;
  }
  return groups;
}

}  // namespace graphwave
