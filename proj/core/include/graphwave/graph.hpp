#pragma once

#include <Eigen/Dense>

#include <complex>
#include <map>
#include <optional>
#include <vector>

#include "graphwave/exact.hpp"

namespace graphwave {

struct EdgeSpec {
  int u = 0;
  int v = 0;
  double length = 0.0;
};

// Scattering condition at one vertex.  Channel order inside the matrix is
// the lead first (when the vertex carries one), then the incident edges by
// ascending edge id.  An empty matrix means the Neumann condition.
struct VertexMatrixSpec {
  Eigen::MatrixXcd entries;
};

struct GraphSpec {
  int vertex_count = 0;
  std::vector<EdgeSpec> edges;
  std::vector<int> leads;  // vertices carrying a half-infinite lead, at most one each
  std::map<int, VertexMatrixSpec> vertex_matrices;
};

// Unitary vertex condition, carrying an exact representation over
// Q(sqrt2) + i*Q(sqrt2) whenever the entries allow one.
class VertexMatrix {
public:
  VertexMatrix() = default;

  static VertexMatrix neumann(int channel_count);
  static VertexMatrix from_entries(Eigen::MatrixXcd entries);

  int dim() const { return static_cast<int>(entries_.rows()); }
  const Eigen::MatrixXcd& entries() const { return entries_; }
  bool is_exact() const { return !exact_.empty(); }
  const QuadComplex& exact_entry(int r, int c) const { return exact_[r * dim() + c]; }

private:
  Eigen::MatrixXcd entries_;
  std::vector<QuadComplex> exact_;  // row-major; empty when no exact form was found
};

// max |(M* M - I)_{ij}|
double unitarity_defect(const Eigen::MatrixXcd& m);

// A finite metric graph with directed bonds.  Edge e gives bonds 2e (from
// the lower-numbered endpoint to the higher) and 2e+1 (its reversal), so
// reverse(d) == d ^ 1.  Lead channels are numbered by the order the lead
// vertices were listed.
class MetricGraph {
public:
  int vertex_count() const { return static_cast<int>(vm_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  int bond_count() const { return 2 * edge_count(); }
  int lead_count() const { return static_cast<int>(leads_.size()); }
  bool open() const { return !leads_.empty(); }

  double edge_length(int e) const { return edges_[e].length; }
  double bond_length(int d) const { return edges_[d / 2].length; }
  double total_length() const { return total_length_; }
  double min_edge_length() const { return min_length_; }
  double max_edge_length() const { return max_length_; }
  Eigen::VectorXd bond_lengths() const;

  int origin(int d) const { return (d & 1) ? edges_[d / 2].v : edges_[d / 2].u; }
  int terminus(int d) const { return (d & 1) ? edges_[d / 2].u : edges_[d / 2].v; }
  static int reverse(int d) { return d ^ 1; }

  int degree(int v) const { return static_cast<int>(out_bonds_[v].size()); }
  const std::vector<int>& outgoing_bonds(int v) const { return out_bonds_[v]; }
  const std::vector<int>& incoming_bonds(int v) const { return in_bonds_[v]; }

  int lead_vertex(int h) const;
  std::optional<int> lead_at(int v) const;

  const VertexMatrix& vertex_matrix(int v) const { return vm_[v]; }
  bool exact() const { return exact_; }

  // Bond-to-bond amplitude: entry of the vertex matrix at the joint vertex,
  // zero when terminus(d_in) != origin(d_out).  Lead channels are excluded,
  // so on open graphs this is the interior sub-block.
  std::complex<double> amplitude(int d_out, int d_in) const;
  QuadComplex exact_amplitude(int d_out, int d_in) const;
  const Eigen::MatrixXcd& amplitude_matrix() const { return sigma_; }

  // Lead couplings (open graphs; h is a lead channel).
  std::complex<double> lead_reflection(int h) const;
  std::complex<double> lead_to_bond(int d, int h) const;
  std::complex<double> bond_to_lead(int h, int d) const;
  QuadComplex exact_lead_reflection(int h) const;
  QuadComplex exact_lead_to_bond(int d, int h) const;
  QuadComplex exact_bond_to_lead(int h, int d) const;

  // Row/column of the bond's edge inside the vertex matrix at its two ends.
  int channel_at_origin(int d) const { return slot_origin_[d]; }
  int channel_at_terminus(int d) const { return slot_terminus_[d]; }

private:
  friend MetricGraph build_graph(const GraphSpec& spec);

  void check_lead(int h) const;

  struct Edge {
    int u, v;  // u < v
    double length;
  };
  std::vector<Edge> edges_;
  std::vector<int> leads_;
  std::vector<std::optional<int>> lead_channel_;  // per vertex
  std::vector<VertexMatrix> vm_;
  std::vector<std::vector<int>> out_bonds_, in_bonds_;
  std::vector<int> slot_origin_, slot_terminus_;
  Eigen::MatrixXcd sigma_;
  bool exact_ = false;
  double total_length_ = 0.0, min_length_ = 0.0, max_length_ = 0.0;
};

// Validates the description (simple, connected, positive lengths, unitary
// matrices of the right size, at most one lead per vertex) and builds the
// bond-indexed representation.
MetricGraph build_graph(const GraphSpec& spec);

VertexMatrix neumann_vertex_matrix(int channel_count);

// B(d, d') = 1 exactly when bond d' feeds bond d, i.e. d' ends where d starts.
Eigen::MatrixXi edge_adjacency(const MetricGraph& g);

// When the graph is two edges joined at a single lead-carrying vertex with
// dead-end outer vertices, returns the two edge lengths (edge order).
std::optional<std::pair<double, double>> two_edge_junction_lengths(const MetricGraph& g);

}  // namespace graphwave
