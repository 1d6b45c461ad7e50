#include "graphwave/graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <set>
#include <string>
#include <utility>

#include "graphwave/errors.hpp"

namespace graphwave {

namespace {
constexpr double kUnitaryTol = 1e-12;
}

VertexMatrix VertexMatrix::neumann(int channel_count) {
  if (channel_count < 1) throw PreconditionError("neumann matrix needs at least one channel");
  VertexMatrix m;
  m.entries_ = Eigen::MatrixXcd::Constant(channel_count, channel_count, 2.0 / channel_count);
  m.entries_.diagonal().array() -= 1.0;
  m.exact_.resize(static_cast<std::size_t>(channel_count) * channel_count);
  QuadRational off{BigRational(2, channel_count)};
  QuadRational diag{BigRational(2, channel_count) - 1};
  for (int r = 0; r < channel_count; ++r)
    for (int c = 0; c < channel_count; ++c)
      m.exact_[r * channel_count + c] = QuadComplex(r == c ? diag : off);
  return m;
}

VertexMatrix VertexMatrix::from_entries(Eigen::MatrixXcd entries) {
  VertexMatrix m;
  m.entries_ = std::move(entries);
  const int n = m.dim();
  std::vector<QuadComplex> exact(static_cast<std::size_t>(n) * n);
  bool ok = true;
  for (int r = 0; r < n && ok; ++r) {
    for (int c = 0; c < n && ok; ++c) {
      auto re = recognize_quad(m.entries_(r, c).real());
      auto im = recognize_quad(m.entries_(r, c).imag());
      if (re && im)
        exact[r * n + c] = QuadComplex(*re, *im);
      else
        ok = false;
    }
  }
  if (ok) m.exact_ = std::move(exact);
  return m;
}

double unitarity_defect(const Eigen::MatrixXcd& m) {
  Eigen::MatrixXcd gram = m.adjoint() * m;
  gram.diagonal().array() -= 1.0;
  return gram.cwiseAbs().maxCoeff();
}

Eigen::VectorXd MetricGraph::bond_lengths() const {
  Eigen::VectorXd len(bond_count());
  for (int d = 0; d < bond_count(); ++d) len[d] = bond_length(d);
  return len;
}

int MetricGraph::lead_vertex(int h) const {
  check_lead(h);
  return leads_[h];
}

std::optional<int> MetricGraph::lead_at(int v) const { return lead_channel_[v]; }

void MetricGraph::check_lead(int h) const {
  if (h < 0 || h >= lead_count()) throw PreconditionError("lead channel out of range");
}

std::complex<double> MetricGraph::amplitude(int d_out, int d_in) const {
  if (terminus(d_in) != origin(d_out)) return 0.0;
  return sigma_(d_out, d_in);
}

QuadComplex MetricGraph::exact_amplitude(int d_out, int d_in) const {
  if (!exact_) throw PreconditionError("graph has no exact vertex matrices");
  if (terminus(d_in) != origin(d_out)) return {};
  int v = origin(d_out);
  return vm_[v].exact_entry(slot_origin_[d_out], slot_terminus_[d_in]);
}

std::complex<double> MetricGraph::lead_reflection(int h) const {
  check_lead(h);
  return vm_[leads_[h]].entries()(0, 0);
}

std::complex<double> MetricGraph::lead_to_bond(int d, int h) const {
  check_lead(h);
  if (origin(d) != leads_[h]) return 0.0;
  return vm_[leads_[h]].entries()(slot_origin_[d], 0);
}

std::complex<double> MetricGraph::bond_to_lead(int h, int d) const {
  check_lead(h);
  if (terminus(d) != leads_[h]) return 0.0;
  return vm_[leads_[h]].entries()(0, slot_terminus_[d]);
}

QuadComplex MetricGraph::exact_lead_reflection(int h) const {
  check_lead(h);
  if (!exact_) throw PreconditionError("graph has no exact vertex matrices");
  return vm_[leads_[h]].exact_entry(0, 0);
}

QuadComplex MetricGraph::exact_lead_to_bond(int d, int h) const {
  check_lead(h);
  if (!exact_) throw PreconditionError("graph has no exact vertex matrices");
  if (origin(d) != leads_[h]) return {};
  return vm_[leads_[h]].exact_entry(slot_origin_[d], 0);
}

QuadComplex MetricGraph::exact_bond_to_lead(int h, int d) const {
  check_lead(h);
  if (!exact_) throw PreconditionError("graph has no exact vertex matrices");
  if (terminus(d) != leads_[h]) return {};
  return vm_[leads_[h]].exact_entry(0, slot_terminus_[d]);
}

MetricGraph build_graph(const GraphSpec& spec) {
  const int V = spec.vertex_count;
  if (V < 1) throw SpecError("graph needs at least one vertex");
  const int E = static_cast<int>(spec.edges.size());
  if (E == 0) throw SpecError("graph needs at least one edge");

  MetricGraph g;
  g.edges_.reserve(E);
  std::set<std::pair<int, int>> seen;
  for (int e = 0; e < E; ++e) {
    const EdgeSpec& es = spec.edges[e];
    if (es.u < 0 || es.u >= V || es.v < 0 || es.v >= V)
      throw SpecError("edge " + std::to_string(e) + ": endpoint out of range");
    if (es.u == es.v)
      throw SpecError("edge " + std::to_string(e) + ": self-loops are not supported");
    if (!std::isfinite(es.length) || es.length <= 0.0)
      throw SpecError("edge " + std::to_string(e) + ": length must be positive and finite");
    auto [lo, hi] = std::minmax(es.u, es.v);
    if (!seen.insert({lo, hi}).second)
      throw SpecError("edge " + std::to_string(e) + ": parallel edges are not supported");
    g.edges_.push_back({lo, hi, es.length});
  }

  std::vector<std::vector<int>> inc(V);
  for (int e = 0; e < E; ++e) {
    inc[g.edges_[e].u].push_back(e);
    inc[g.edges_[e].v].push_back(e);
  }

  std::vector<char> visited(V, 0);
  std::queue<int> bfs;
  bfs.push(0);
  visited[0] = 1;
  int reached = 1;
  while (!bfs.empty()) {
    int v = bfs.front();
    bfs.pop();
    for (int e : inc[v]) {
      int w = g.edges_[e].u == v ? g.edges_[e].v : g.edges_[e].u;
      if (!visited[w]) {
        visited[w] = 1;
        ++reached;
        bfs.push(w);
      }
    }
  }
  if (reached != V) throw SpecError("graph must be connected");

  g.lead_channel_.assign(V, std::nullopt);
  for (std::size_t h = 0; h < spec.leads.size(); ++h) {
    int v = spec.leads[h];
    if (v < 0 || v >= V) throw SpecError("lead vertex out of range");
    if (g.lead_channel_[v])
      throw SpecError("vertex " + std::to_string(v) + " carries more than one lead");
    g.lead_channel_[v] = static_cast<int>(h);
    g.leads_.push_back(v);
  }

  const int D = 2 * E;
  g.slot_origin_.assign(D, -1);
  g.slot_terminus_.assign(D, -1);
  for (int v = 0; v < V; ++v) {
    int off = g.lead_channel_[v] ? 1 : 0;
    for (std::size_t i = 0; i < inc[v].size(); ++i) {
      int e = inc[v][i];
      int slot = off + static_cast<int>(i);
      if (g.edges_[e].u == v) {
        g.slot_origin_[2 * e] = slot;
        g.slot_terminus_[2 * e + 1] = slot;
      } else {
        g.slot_origin_[2 * e + 1] = slot;
        g.slot_terminus_[2 * e] = slot;
      }
    }
  }

  g.out_bonds_.assign(V, {});
  g.in_bonds_.assign(V, {});
  for (int d = 0; d < D; ++d) {
    g.out_bonds_[g.origin(d)].push_back(d);
    g.in_bonds_[g.terminus(d)].push_back(d);
  }

  for (const auto& [v, ignored] : spec.vertex_matrices)
    if (v < 0 || v >= V) throw SpecError("vertex matrix for unknown vertex " + std::to_string(v));

  g.vm_.resize(V);
  bool exact = true;
  for (int v = 0; v < V; ++v) {
    int dim = static_cast<int>(inc[v].size()) + (g.lead_channel_[v] ? 1 : 0);
    auto it = spec.vertex_matrices.find(v);
    if (it == spec.vertex_matrices.end() || it->second.entries.size() == 0) {
      g.vm_[v] = VertexMatrix::neumann(dim);
    } else {
      const Eigen::MatrixXcd& m = it->second.entries;
      if (m.rows() != dim || m.cols() != dim)
        throw SpecError("vertex " + std::to_string(v) + ": matrix must be " +
                        std::to_string(dim) + "x" + std::to_string(dim));
      if (unitarity_defect(m) > kUnitaryTol)
        throw SpecError("vertex " + std::to_string(v) + ": matrix is not unitary");
      g.vm_[v] = VertexMatrix::from_entries(m);
    }
    exact = exact && g.vm_[v].is_exact();
  }
  g.exact_ = exact;

  g.total_length_ = 0.0;
  g.min_length_ = std::numeric_limits<double>::infinity();
  g.max_length_ = 0.0;
  for (const auto& ed : g.edges_) {
    g.total_length_ += ed.length;
    g.min_length_ = std::min(g.min_length_, ed.length);
    g.max_length_ = std::max(g.max_length_, ed.length);
  }

  g.sigma_ = Eigen::MatrixXcd::Zero(D, D);
  for (int dout = 0; dout < D; ++dout) {
    int v = g.origin(dout);
    for (int din : g.in_bonds_[v])
      g.sigma_(dout, din) = g.vm_[v].entries()(g.slot_origin_[dout], g.slot_terminus_[din]);
  }

  return g;
}

VertexMatrix neumann_vertex_matrix(int channel_count) {
  return VertexMatrix::neumann(channel_count);
}

Eigen::MatrixXi edge_adjacency(const MetricGraph& g) {
  const int D = g.bond_count();
  Eigen::MatrixXi B = Eigen::MatrixXi::Zero(D, D);
  for (int d = 0; d < D; ++d)
    for (int dp = 0; dp < D; ++dp)
      if (g.terminus(dp) == g.origin(d)) B(d, dp) = 1;
  return B;
}

std::optional<std::pair<double, double>> two_edge_junction_lengths(const MetricGraph& g) {
  if (g.vertex_count() != 3 || g.edge_count() != 2 || g.lead_count() != 1) return std::nullopt;
  const int c = g.lead_vertex(0);
  if (g.degree(c) != 2) return std::nullopt;
  for (int v = 0; v < 3; ++v)
    if (v != c && g.degree(v) != 1) return std::nullopt;

  // Centre must carry the balanced splitter (lead, first edge, second edge),
  // dead ends the Neumann point condition.
  const double r = std::sqrt(0.5);
  Eigen::MatrixXcd splitter(3, 3);
  splitter << 0, r, -r, -r, 0.5, 0.5, r, 0.5, 0.5;
  if ((g.vertex_matrix(c).entries() - splitter).cwiseAbs().maxCoeff() > 1e-12)
    return std::nullopt;
  for (int v = 0; v < 3; ++v) {
    if (v == c) continue;
    if (std::abs(g.vertex_matrix(v).entries()(0, 0) - 1.0) > 1e-12) return std::nullopt;
  }
  return std::make_pair(g.edge_length(0), g.edge_length(1));
}

}  // namespace graphwave
