#include "graphwave/fourier.hpp"

#include <complex>
#include <random>
#include <vector>

#include "doctest.h"

using graphwave::chirp_transform;
using graphwave::direct_transform;

namespace {

std::vector<std::complex<double>> random_coeffs(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  std::vector<std::complex<double>> c(n);
  for (auto& z : c) z = {uni(rng), uni(rng)};
  return c;
}

double max_abs_diff(const std::vector<std::complex<double>>& a,
                    const std::vector<std::complex<double>>& b) {
  REQUIRE(a.size() == b.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

}  // namespace

TEST_SUITE("fourier") {

TEST_CASE("chirp transform matches the direct sum") {
  auto c = random_coeffs(257, 11);
  auto fast = chirp_transform(c, 0.0137, 61);
  auto slow = direct_transform(c, 0.0137, 61);
  CHECK(max_abs_diff(fast, slow) < 1e-12);
}

TEST_CASE("negative frequency step") {
  auto c = random_coeffs(1000, 5);
  auto fast = chirp_transform(c, -0.4121, 37);
  auto slow = direct_transform(c, -0.4121, 37);
  CHECK(max_abs_diff(fast, slow) < 1e-11);
}

TEST_CASE("single output point is the plain sum") {
  auto c = random_coeffs(64, 3);
  auto fast = chirp_transform(c, 1.7, 1);
  std::complex<double> plain = 0.0;
  for (const auto& z : c) plain += z;  // j*m*w = 0 for m = 0
  REQUIRE(fast.size() == 1);
  CHECK(std::abs(fast[0] - plain) < 1e-12);
}

TEST_CASE("more outputs than inputs") {
  auto c = random_coeffs(17, 29);
  auto fast = chirp_transform(c, 0.219, 301);
  auto slow = direct_transform(c, 0.219, 301);
  CHECK(max_abs_diff(fast, slow) < 1e-12);
}

TEST_CASE("w = 0 reduces every output to the coefficient sum") {
  auto c = random_coeffs(40, 17);
  auto fast = chirp_transform(c, 0.0, 8);
  std::complex<double> plain = 0.0;
  for (const auto& z : c) plain += z;
  for (const auto& f : fast) CHECK(std::abs(f - plain) < 1e-12);
}

TEST_CASE("large index quadratic phases stay accurate") {
  // the quadratic twiddles j^2 w / 2 wrap many times at these sizes; the
  // long double reduction has to keep them to ~1e-12 absolute phase error
  const std::size_t n = 200000;
  auto c = random_coeffs(n, 41);
  const double w = 0.000731;
  auto fast = chirp_transform(c, w, 50);
  auto slow = direct_transform(c, w, 50);
  // direct sum itself accumulates roundoff over 2e5 terms, so compare loosely
  CHECK(max_abs_diff(fast, slow) < 1e-8);
}

}  // TEST_SUITE
