#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "graphwave/errors.hpp"
#include "graphwave/evolution.hpp"
#include "helpers.hpp"

using namespace graphwave;

namespace {

GraphSpec compact_box() {
  // 4 vertices, a cycle plus a chord; no leads
  GraphSpec spec;
  spec.vertex_count = 4;
  spec.edges = {{0, 1, 0.8}, {1, 2, 1.1}, {2, 3, 0.77}, {0, 3, 1.3}, {0, 2, 0.93}};
  return spec;
}

}  // namespace

TEST_SUITE("evolution") {

TEST_CASE("evolution operator is unitary on compact graphs") {
  auto g = build_graph(compact_box());
  for (double k : {0.37, 1.0, 13.5, 211.0}) {
    auto u = evolution_operator(g, k);
    CHECK(u.k == k);
    CHECK(unitarity_defect(u.entries) < 1e-13);
  }
}

TEST_CASE("open graphs are refused") {
  auto g = testhelp::tjunction();
  CHECK_THROWS_AS(evolution_operator(g, 1.0), PreconditionError);
  CHECK_THROWS_AS(find_spectrum(g, 0.0, 10.0), PreconditionError);
}

TEST_CASE("joined interval spectrum is n pi") {
  // two edges with a transmitting middle vertex act as one Neumann interval
  // of unit length
  auto g = testhelp::tjunction_closed();
  auto ks = find_spectrum(g, 0.0, 20.0);
  REQUIRE(ks.size() == 6);
  for (std::size_t n = 0; n < ks.size(); ++n)
    CHECK(ks[n] == doctest::Approx(std::numbers::pi * double(n + 1)).epsilon(1e-9));
}

TEST_CASE("secular indicator is real and flips sign across a root") {
  auto g = testhelp::tjunction_closed();
  double left = secular_indicator(g, 3.0);
  double right = secular_indicator(g, 3.3);  // pi sits in between
  CHECK(left * right < 0.0);
  // and the determinant it normalizes really does vanish there
  CHECK(std::abs(secular_value(g, std::numbers::pi)) < 1e-12);
}

TEST_CASE("root counter agrees with located roots") {
  auto g = build_graph(compact_box());
  auto ks = find_spectrum(g, 0.5, 30.0);
  CHECK(count_spectrum(g, 0.5, 30.0) == static_cast<int>(ks.size()));
  // average spacing follows the total length
  double expected = (30.0 - 0.5) * g.total_length() / std::numbers::pi;
  CHECK(std::abs(static_cast<double>(ks.size()) - expected) < 6.0);
  for (double k : ks) CHECK(std::abs(secular_indicator(g, k)) < 1e-6);
  CHECK(std::is_sorted(ks.begin(), ks.end()));
}

TEST_CASE("counter is additive over subintervals") {
  auto g = build_graph(compact_box());
  int whole = count_spectrum(g, 1.0, 25.0);
  int parts = count_spectrum(g, 1.0, 9.5) + count_spectrum(g, 9.5, 25.0);
  CHECK(whole == parts);
}

TEST_CASE("classical map is doubly stochastic when compact") {
  auto g = build_graph(compact_box());
  auto m = classical_map(g).entries;
  for (int i = 0; i < m.rows(); ++i) {
    CHECK(m.row(i).sum() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(m.col(i).sum() == doctest::Approx(1.0).epsilon(1e-12));
  }
  // uniform distribution is stationary
  Eigen::VectorXd p0 = Eigen::VectorXd::Constant(m.rows(), 1.0 / double(m.rows()));
  auto p9 = propagate_classical(p0, classical_map(g), 9);
  CHECK((p9 - p0).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("open map leaks mass at the junction only") {
  auto g = testhelp::tjunction();
  auto m = classical_map(g).entries;
  // bonds arriving at dead ends conserve mass, bonds at the junction lose half
  CHECK(m.col(0).sum() == doctest::Approx(1.0));   // into vertex 1
  CHECK(m.col(1).sum() == doctest::Approx(0.5));   // into the junction
  CHECK(m.col(2).sum() == doctest::Approx(1.0));
  CHECK(m.col(3).sum() == doctest::Approx(0.5));

  // from both inward bonds, survival halves every other step
  Eigen::VectorXd p0(4);
  p0 << 0.0, 0.5, 0.0, 0.5;
  for (int t = 1; t <= 8; ++t) {
    auto pt = propagate_classical(p0, classical_map(g), t);
    CHECK(pt.sum() == doctest::Approx(std::pow(2.0, -std::ceil(t / 2.0))).epsilon(1e-12));
  }
}

TEST_CASE("propagate rejects junk") {
  auto g = testhelp::tjunction();
  auto m = classical_map(g);
  Eigen::VectorXd bad(3);
  bad << 1, 0, 0;
  CHECK_THROWS_AS(propagate_classical(bad, m, 1), PreconditionError);
  Eigen::VectorXd neg(4);
  neg << -0.5, 0.5, 0.5, 0.5;
  CHECK_THROWS_AS(propagate_classical(neg, m, 1), PreconditionError);
  Eigen::VectorXd ok = Eigen::VectorXd::Constant(4, 0.25);
  CHECK_THROWS_AS(propagate_classical(ok, m, -1), PreconditionError);
}

}  // TEST_SUITE
