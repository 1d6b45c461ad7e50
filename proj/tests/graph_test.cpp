#include <random>

#include "doctest.h"
#include "graphwave/errors.hpp"
#include "graphwave/graph.hpp"
#include "helpers.hpp"

using namespace graphwave;

TEST_SUITE("graph") {

TEST_CASE("bond layout of the junction") {
  auto g = testhelp::tjunction();
  CHECK(g.vertex_count() == 3);
  CHECK(g.edge_count() == 2);
  CHECK(g.bond_count() == 4);
  CHECK(g.lead_count() == 1);
  CHECK(g.open());
  // edge e gives bonds 2e (low endpoint to high) and 2e+1
  CHECK(g.origin(0) == 0);
  CHECK(g.terminus(0) == 1);
  CHECK(g.origin(1) == 1);
  CHECK(g.terminus(1) == 0);
  CHECK(g.origin(2) == 0);
  CHECK(g.terminus(2) == 2);
  CHECK(MetricGraph::reverse(2) == 3);
  CHECK(MetricGraph::reverse(3) == 2);
  CHECK(g.bond_length(0) == g.bond_length(1));
  CHECK(g.total_length() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(g.min_edge_length() == doctest::Approx(testhelp::kL1));
  CHECK(g.max_edge_length() == doctest::Approx(testhelp::kL2));
}

TEST_CASE("validation refuses malformed descriptions") {
  GraphSpec base;
  base.vertex_count = 3;
  base.edges = {{0, 1, 1.0}, {1, 2, 1.0}};

  CHECK_NOTHROW(build_graph(base));

  SUBCASE("no vertices") {
    base.vertex_count = 0;
    base.edges.clear();
    CHECK_THROWS_AS(build_graph(base), SpecError);
  }
  SUBCASE("self loop") {
    base.edges.push_back({2, 2, 1.0});
    CHECK_THROWS_AS(build_graph(base), SpecError);
  }
  SUBCASE("parallel edge, either orientation") {
    base.edges.push_back({1, 0, 2.0});
    CHECK_THROWS_AS(build_graph(base), SpecError);
  }
  SUBCASE("disconnected") {
    base.vertex_count = 4;
    CHECK_THROWS_AS(build_graph(base), SpecError);
  }
  SUBCASE("nonpositive length") {
    base.edges[0].length = 0.0;
    CHECK_THROWS_AS(build_graph(base), SpecError);
  }
  SUBCASE("endpoint out of range") {
    base.edges[0].v = 7;
    CHECK_THROWS_AS(build_graph(base), SpecError);
  }
  SUBCASE("duplicate lead") {
    base.leads = {1, 1};
    CHECK_THROWS_AS(build_graph(base), SpecError);
  }
  SUBCASE("lead out of range") {
    base.leads = {5};
    CHECK_THROWS_AS(build_graph(base), SpecError);
  }
  SUBCASE("matrix for a vertex that does not exist") {
    base.vertex_matrices[9].entries = Eigen::MatrixXcd::Identity(1, 1);
    CHECK_THROWS_AS(build_graph(base), SpecError);
  }
  SUBCASE("vertex matrix of the wrong size") {
    base.vertex_matrices[1].entries = Eigen::MatrixXcd::Identity(3, 3);
    CHECK_THROWS_AS(build_graph(base), SpecError);
  }
  SUBCASE("non-unitary matrix") {
    Eigen::MatrixXcd m(2, 2);
    m << 1, 0, 0, 2;
    base.vertex_matrices[1].entries = m;
    CHECK_THROWS_AS(build_graph(base), SpecError);
  }
}

TEST_CASE("neumann matrices") {
  auto m1 = neumann_vertex_matrix(1).entries();
  CHECK(m1(0, 0) == std::complex<double>(1.0));  // dead end reflects
  auto m2 = neumann_vertex_matrix(2).entries();
  CHECK(m2(0, 0) == std::complex<double>(0.0));  // degree 2 transmits
  CHECK(m2(0, 1) == std::complex<double>(1.0));
  auto m3 = neumann_vertex_matrix(3).entries();
  CHECK(m3(0, 0).real() == doctest::Approx(-1.0 / 3.0));
  CHECK(m3(0, 1).real() == doctest::Approx(2.0 / 3.0));
  CHECK(unitarity_defect(m3) < 1e-15);
  CHECK(unitarity_defect(neumann_vertex_matrix(7).entries()) < 1e-14);
}

TEST_CASE("lead goes first in the channel order") {
  // degree-2 vertex with a lead: Neumann is 2/3 - delta on (lead, e0, e1)
  GraphSpec spec;
  spec.vertex_count = 3;
  spec.edges = {{0, 1, 1.0}, {1, 2, 0.7}};
  spec.leads = {1};
  auto g = build_graph(spec);
  // bond 0 (edge 0 arriving at vertex 1) feeds bond 2 (edge 1 leaving it)
  CHECK(g.amplitude(2, 0).real() == doctest::Approx(2.0 / 3.0));
  CHECK(g.amplitude(1, 0).real() == doctest::Approx(-1.0 / 3.0));
  CHECK(g.amplitude(0, 1).real() == doctest::Approx(1.0));  // dead-end reflection
  CHECK(g.lead_to_bond(2, 0).real() == doctest::Approx(2.0 / 3.0));
  CHECK(g.bond_to_lead(0, 0).real() == doctest::Approx(2.0 / 3.0));
  CHECK(g.lead_reflection(0).real() == doctest::Approx(-1.0 / 3.0));
  // chaining rule: nothing flows between bonds that do not meet
  CHECK(g.amplitude(3, 1) == std::complex<double>(0.0));
}

TEST_CASE("exact layer recognizes the splitter") {
  auto g = testhelp::tjunction();
  REQUIRE(g.exact());
  // an inward bond scatters back out with weight 1/2
  auto a = g.exact_amplitude(0, 1);
  CHECK(a.re.rational_part() == BigRational(1, 2));
  CHECK(a.re.sqrt2_part() == 0);
  CHECK(a.im.is_zero());
  // lead coupling onto the short edge is -sqrt2/2
  auto t = g.exact_lead_to_bond(0, 0);
  CHECK(t.re.sqrt2_part() == BigRational(-1, 2));
  auto o = g.exact_bond_to_lead(0, 1);
  CHECK(o.re.sqrt2_part() == BigRational(1, 2));
  CHECK(g.exact_lead_reflection(0).re.is_zero());
}

TEST_CASE("junction shape detection") {
  auto lens = two_edge_junction_lengths(testhelp::tjunction());
  REQUIRE(lens.has_value());
  CHECK(lens->first == doctest::Approx(testhelp::kL1).epsilon(1e-15));
  CHECK(lens->second == doctest::Approx(testhelp::kL2).epsilon(1e-15));
  CHECK(!two_edge_junction_lengths(testhelp::tjunction_closed()).has_value());
}

TEST_CASE("edge adjacency follows the chaining rule") {
  auto g = testhelp::tjunction();
  auto b = edge_adjacency(g);
  for (int d = 0; d < g.bond_count(); ++d)
    for (int dp = 0; dp < g.bond_count(); ++dp)
      CHECK(b(d, dp) == (g.origin(d) == g.terminus(dp) ? 1 : 0));
}

TEST_CASE("random graphs build and stay unitary") {
  std::mt19937_64 rng(20240817);
  for (int trial = 0; trial < 25; ++trial) {
    auto g = build_graph(testhelp::random_neumann_spec(rng));
    for (int v = 0; v < g.vertex_count(); ++v)
      CHECK(unitarity_defect(g.vertex_matrix(v).entries()) < 1e-12);
    CHECK(g.exact());  // Neumann entries are rational
  }
}

}  // TEST_SUITE
