#include <doctest.h>

#include <cmath>
#include <numbers>

#include "acflab/cap_spectrum.hpp"
#include "acflab/char_constants.hpp"
#include "acflab/error.hpp"
#include "oracles.hpp"

using namespace acflab;
using std::numbers::pi;

TEST_CASE("alpha from lambda on exact cases") {
  CHECK(alpha_from_lambda(3, 2.0).alpha == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(alpha_from_lambda(3, 6.0).alpha == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(alpha_from_lambda(4, 3.0).alpha == doctest::Approx(1.0).epsilon(1e-15));
  for (int n = 3; n <= 12; ++n) CHECK(alpha_from_lambda(n, 0.0).alpha == 0.0);
  CHECK_THROWS_AS(alpha_from_lambda(3, -1e-9), InvalidArgument);
  CHECK_THROWS_AS(alpha_from_lambda(2, 1.0), InvalidArgument);
}

TEST_CASE("alpha satisfies its defining quadratic") {
  oracle::Rng rng(41);
  for (int trial = 0; trial < 2000; ++trial) {
    const int n = rng.integer(3, 40);
    const double lambda = std::pow(10.0, rng.uniform(-10.0, 6.0));
    const CharConstant c = alpha_from_lambda(n, lambda);
    CHECK(c.alpha > 0.0);
    CHECK(c.n == n);
    CHECK(c.lambda == lambda);
    CHECK(std::abs(c.quadratic_residual()) <= 1e-12 * std::max(1.0, lambda));
  }
}

TEST_CASE("tiny eigenvalues keep full relative accuracy in alpha") {
  // alpha ~ lambda / (n - 2) for lambda << 1.
  const CharConstant c = alpha_from_lambda(30, 1e-14);
  CHECK(c.alpha == doctest::Approx(1e-14 / 28.0).epsilon(1e-12));
}

TEST_CASE("alpha of a cap") {
  CHECK(alpha_of_cap(CapSpec(3, pi / 2)).alpha == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(alpha_of_cap(CapSpec(10, pi / 2)).alpha == doctest::Approx(1.0).epsilon(1e-6));
  for (const auto& c : oracle::kLegendreCaps) {
    CHECK(alpha_of_cap(CapSpec(3, c.theta0)).alpha == doctest::Approx(c.nu).epsilon(1e-7));
  }
  CHECK(alpha_of_cap(CapSpec(3, 2 * pi / 3)).alpha < 1.0);
  // n = 4: alpha = pi / theta0 - 1.
  for (double t : {0.4, 1.3, 2.9}) {
    CHECK(alpha_of_cap(CapSpec(4, t)).alpha == doctest::Approx(pi / t - 1.0).epsilon(1e-8));
  }
}

TEST_CASE("optimal t on exact cases and as a property") {
  CHECK(optimal_t(3, 2.0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(optimal_t(4, 3.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(optimal_t(3, 6.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  CHECK_THROWS_AS(optimal_t(3, 0.0), InvalidArgument);
  oracle::Rng rng(43);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = rng.integer(3, 20);
    const double lambda = std::pow(10.0, rng.uniform(-6.0, 5.0));
    const double t = optimal_t(n, lambda);
    const double alpha = alpha_from_lambda(n, lambda).alpha;
    CHECK(t >= 0.0);
    CHECK(t <= 1.0);
    CHECK(std::abs(t * lambda - alpha * alpha) <= 1e-12 * std::max(1.0, lambda));
    CHECK(std::abs(optimal_t_residual(n, lambda, t)) <= 1e-12 * std::max(1.0, lambda));
  }
}

TEST_CASE("complementary caps sum to at least two, with equality at the hemisphere") {
  for (int n : {3, 5}) {
    const FhScanResult r = fh_scan(n, 64);
    CHECK(r.n == n);
    CHECK(r.beta_n == doctest::Approx(2.0).epsilon(1e-5));
    CHECK(std::abs(r.theta_n - pi / 2) < 1e-4);
    CHECK(r.refined);
    CHECK(r.samples.size() == 64);
    for (const FhSample& s : r.samples) CHECK(s.sum >= r.beta_n - 1e-9);
    for (std::size_t k = 0; k < r.samples.size(); ++k) {
      CHECK(r.samples[k].theta0 == doctest::Approx(pi - r.samples[63 - k].theta0).epsilon(1e-14));
      CHECK(r.samples[k].sum == doctest::Approx(r.samples[63 - k].sum).epsilon(1e-9));
    }
    CHECK_FALSE(r.near_minimizers.empty());
  }
  CHECK(fh_sum(3, pi / 3) > 2.0);
  CHECK(fh_sum(3, pi / 3) == doctest::Approx(1.777288270158946 + 0.6015093093912538).epsilon(1e-7));
  CHECK_THROWS_AS(fh_scan(3, 63), InvalidArgument);
}

TEST_CASE("hemisphere alpha is the same in every dimension") {
  const DimensionTable t = dimension_monotonicity_check(pi / 2, 10);
  REQUIRE(t.alphas.size() == 8);
  for (const auto& [n, a] : t.alphas) CHECK(a == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(t.non_increasing);
}

TEST_CASE("alpha is non-increasing in n for caps at least a hemisphere") {
  for (double theta0 : {2 * pi / 3, 3 * pi / 4, 5 * pi / 6}) {
    const DimensionTable t = dimension_monotonicity_check(theta0, 8);
    CHECK(t.non_increasing);
    for (const auto& [n, a] : t.alphas) CHECK(a < 1.0);
  }
}

TEST_CASE("alpha increases with n for caps smaller than a hemisphere") {
  // Exact values: alpha(pi/6, 3) is the Legendre degree, alpha(pi/6, 4) = 5.
  const DimensionTable t = dimension_monotonicity_check(pi / 6, 6);
  REQUIRE(t.alphas.size() == 4);
  CHECK(t.alphas[0].second == doctest::Approx(4.083687067028117).epsilon(1e-7));
  CHECK(t.alphas[1].second == doctest::Approx(5.0).epsilon(1e-7));
  CHECK_FALSE(t.non_increasing);
  CHECK(t.largest_increase > 0.9);
  for (std::size_t i = 1; i < t.alphas.size(); ++i) CHECK(t.alphas[i].second > t.alphas[i - 1].second);
  CHECK_FALSE(dimension_monotonicity_check(pi / 3, 8).non_increasing);
}

TEST_CASE("dimension table matches the zonal oracle") {
  oracle::Rng rng(47);
  for (int trial = 0; trial < 10; ++trial) {
    const double theta0 = rng.uniform(0.4, pi - 0.4);
    const DimensionTable t = dimension_monotonicity_check(theta0, 7);
    for (const auto& [n, a] : t.alphas) {
      CHECK(a == doctest::Approx(oracle::cap_alpha(n, theta0)).epsilon(1e-7));
    }
  }
}

TEST_CASE("gamma_n at the hemisphere and its symmetry") {
  CHECK(gamma_n(5, pi / 2) == doctest::Approx(8.0 / 3.0).epsilon(1e-6));
  CHECK(gamma_n(3, pi / 2) == doctest::Approx(4.0).epsilon(1e-6));
  CHECK(gamma_n(6, pi / 3) == doctest::Approx(gamma_n(6, 2 * pi / 3)).epsilon(1e-9));
  CHECK(gamma_n(6, pi / 3) > gamma_n(6, pi / 2));
  for (int n = 5; n <= 8; ++n) {
    const double h = 0.05;
    for (double t = 0.3; t < pi - 0.3; t += 0.2) {
      CHECK(gamma_n(n, t + h) - 2 * gamma_n(n, t) + gamma_n(n, t - h) > 0.0);
      CHECK(gamma_n(n, t) >= 2.0 * (n - 1) / (n - 2) - 1e-6);
    }
  }
}

TEST_CASE("alpha below two forces lambda below 2n") {
  oracle::Rng rng(53);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = rng.integer(3, 10);
    const CharConstant c = alpha_of_cap(CapSpec(n, rng.uniform(0.3, pi - 0.1)));
    if (c.alpha < 2.0) CHECK(c.lambda < 2.0 * n);
  }
}
