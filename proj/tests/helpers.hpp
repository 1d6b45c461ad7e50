#pragma once

#include <random>
#include <set>
#include <utility>

#include "graphwave/builtin_specs.hpp"
#include "graphwave/graph.hpp"
#include "graphwave/specfile.hpp"

namespace testhelp {

inline constexpr double kL1 = 0.40450849718747373;
inline constexpr double kL2 = 0.5954915028125263;

inline graphwave::MetricGraph tjunction() {
  return graphwave::build_graph(
      graphwave::parse_graph_spec(*graphwave::builtin_spec_text("tjunction")));
}

inline graphwave::MetricGraph tjunction_closed() {
  return graphwave::build_graph(
      graphwave::parse_graph_spec(*graphwave::builtin_spec_text("tjunction_closed")));
}

// Two edges joined at a lead-carrying balanced splitter, arbitrary lengths.
inline graphwave::GraphSpec junction_spec(double l1, double l2) {
  graphwave::GraphSpec spec;
  spec.vertex_count = 3;
  spec.edges = {{0, 1, l1}, {0, 2, l2}};
  spec.leads = {0};
  const double r = 0.7071067811865476;
  Eigen::MatrixXcd m(3, 3);
  m << 0, r, -r, -r, 0.5, 0.5, r, 0.5, 0.5;
  spec.vertex_matrices[0].entries = m;
  return spec;
}

// Small random simple connected graph, all Neumann, at least one lead.
inline graphwave::GraphSpec random_neumann_spec(std::mt19937_64& rng, int max_vertices = 5) {
  std::uniform_int_distribution<int> nv(2, max_vertices);
  std::uniform_real_distribution<double> len(0.5, 1.5);
  graphwave::GraphSpec spec;
  spec.vertex_count = nv(rng);
  std::set<std::pair<int, int>> used;
  for (int v = 1; v < spec.vertex_count; ++v) {
    std::uniform_int_distribution<int> pick(0, v - 1);
    int u = pick(rng);
    used.insert({u, v});
    spec.edges.push_back({u, v, len(rng)});
  }
  std::uniform_int_distribution<int> coin(0, 3);
  for (int u = 0; u < spec.vertex_count; ++u)
    for (int v = u + 1; v < spec.vertex_count; ++v)
      if (!used.count({u, v}) && coin(rng) == 0)
        spec.edges.push_back({u, v, len(rng)});
  for (int v = 0; v < spec.vertex_count; ++v)
    if (coin(rng) < 2) spec.leads.push_back(v);
  if (spec.leads.empty()) spec.leads.push_back(0);
  return spec;
}

}  // namespace testhelp
