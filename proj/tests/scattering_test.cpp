#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "doctest.h"
#include "graphwave/errors.hpp"
#include "graphwave/exact.hpp"
#include "graphwave/scattering.hpp"
#include "helpers.hpp"

using namespace graphwave;

namespace {

std::complex<double> phase2(double k, double l) {
  return std::polar(1.0, 2.0 * k * l);
}

}  // namespace

TEST_SUITE("scattering") {

TEST_CASE("junction smatrix equals the closed form and is unimodular") {
  auto g = testhelp::tjunction();
  for (double k : {0.5, 1.7, 23.0, 500.1, 999.37}) {
    auto s = smatrix_resolvent(g, k);
    REQUIRE(s.entries.rows() == 1);
    CHECK(!s.near_singular);
    auto closed = tjunction_smatrix(testhelp::kL1, testhelp::kL2, k);
    CHECK(std::abs(s.entries(0, 0) - closed) < 1e-12);
    CHECK(std::abs(std::abs(s.entries(0, 0)) - 1.0) < 1e-12);
  }
}

TEST_CASE("random open graphs give unitary smatrices") {
  std::mt19937_64 rng(7151623);
  std::uniform_real_distribution<double> kdist(0.5, 100.0);
  for (int trial = 0; trial < 6; ++trial) {
    auto g = build_graph(testhelp::random_neumann_spec(rng));
    for (int i = 0; i < 40; ++i) {
      auto s = smatrix_resolvent(g, kdist(rng));
      CHECK(unitarity_defect(s.entries) < 1e-10);
    }
  }
}

TEST_CASE("pathsum low orders by hand") {
  auto g = testhelp::tjunction();
  double k = 7.3;
  // no direct reflection and no zero-step path through the junction
  CHECK(std::abs(smatrix_pathsum(g, k, 0).entries(0, 0)) < 1e-15);
  // one crossing: half of each first excursion comes straight back
  auto s1 = smatrix_pathsum(g, k, 1).entries(0, 0);
  auto expect = -0.5 * (phase2(k, testhelp::kL1) + phase2(k, testhelp::kL2));
  CHECK(std::abs(s1 - expect) < 1e-14);
}

TEST_CASE("pathsum remainder is exactly the resolvent tail") {
  auto g = testhelp::tjunction();
  auto tau_in = lead_entry_matrix(g);
  auto tau_out = lead_exit_matrix(g);
  for (double k : {3.9, 41.0}) {
    auto w = open_evolution(g, k).entries;
    Eigen::MatrixXcd iw = Eigen::MatrixXcd::Identity(4, 4) - w;
    Eigen::MatrixXcd e = Eigen::MatrixXcd::Zero(4, 4);
    for (int d = 0; d < 4; ++d) e(d, d) = std::polar(1.0, k * g.bond_length(d));
    for (int n : {0, 3, 11, 24}) {
      Eigen::MatrixXcd wn = Eigen::MatrixXcd::Identity(4, 4);
      for (int i = 0; i <= n; ++i) wn = wn * w;
      Eigen::MatrixXcd tail = tau_out * iw.lu().solve(wn * e * tau_in);
      Eigen::MatrixXcd diff =
          smatrix_resolvent(g, k).entries - smatrix_pathsum(g, k, n).entries;
      CHECK(std::abs(diff(0, 0) - tail(0, 0)) < 1e-12);
    }
  }
}

TEST_CASE("pathsum converges geometrically on the junction") {
  auto g = testhelp::tjunction();
  double k = 13.1;
  auto exact = smatrix_resolvent(g, k).entries(0, 0);
  double prev = 1.0;
  // the slowest interior eigenmode at this k contracts by about 0.90 per
  // crossing, so 120 steps leave a few times 1e-7
  for (int n : {5, 15, 30, 45, 120}) {
    double err = std::abs(smatrix_pathsum(g, k, n).entries(0, 0) - exact);
    CHECK(err < prev);
    prev = err;
  }
  CHECK(prev < 1e-5);
}

TEST_CASE("family coefficients reference values") {
  CHECK(tjunction_family_coefficient(1, 0) == BigRational(-1, 2));
  CHECK(tjunction_family_coefficient(0, 1) == BigRational(-1, 2));
  CHECK(tjunction_family_coefficient(1, 1) == BigRational(1, 2));
  CHECK(tjunction_family_coefficient(2, 0) == BigRational(-1, 4));
  CHECK(tjunction_family_coefficient(2, 1) == BigRational(1, 8));
  CHECK(tjunction_family_coefficient(3, 0) == BigRational(-1, 8));
  CHECK_THROWS_AS(tjunction_family_coefficient(0, 0), PreconditionError);
}

TEST_CASE("coefficients match the bracket form") {
  // second route through the same numbers, valid from t = 2 up
  for (long t = 2; t <= 14; ++t) {
    for (long t1 = 0; t1 <= t; ++t1) {
      long t2 = t - t1;
      BigRational bracket(2 * binomial(t - 2, t1 - 1) - binomial(t - 2, t1 - 2) -
                              binomial(t - 2, t2 - 2),
                          BigInt(1) << t);
      CHECK(tjunction_family_coefficient(t1, t2) == bracket);
    }
  }
}

TEST_CASE("coefficient series sums to the closed form off the real axis") {
  // with damping the double series converges geometrically, so the Taylor
  // coefficients can be cross-checked against the rational function itself
  std::complex<double> z(17.31, 0.3);
  auto p1 = std::exp(std::complex<double>(0, 2) * z * testhelp::kL1);
  auto p2 = std::exp(std::complex<double>(0, 2) * z * testhelp::kL2);
  std::complex<double> series = 0.0;
  for (long t = 1; t <= 90; ++t)
    for (long t1 = 0; t1 <= t; ++t1)
      series += to_double(tjunction_family_coefficient(t1, t - t1)) *
                std::pow(p1, double(t1)) * std::pow(p2, double(t - t1));
  auto closed = (p1 * p2 - 0.5 * (p1 + p2)) / (1.0 - 0.5 * (p1 + p2));
  CHECK(std::abs(series - closed) < 1e-9);
}

TEST_CASE("near singular flag trips next to a degenerate resonance") {
  // equal lengths make S have true poles on the real axis at k = pi/L1 * m
  auto g = build_graph(testhelp::junction_spec(0.5, 0.5));
  auto s = smatrix_resolvent(g, 2.0 * std::numbers::pi);
  CHECK(s.near_singular);
}

}  // TEST_SUITE
