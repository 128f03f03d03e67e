#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "acflab/cap_spectrum.hpp"
#include "acflab/error.hpp"
#include "acflab/sphere_rearrangement.hpp"
#include "oracles.hpp"

using namespace acflab;
using std::numbers::pi;

namespace {

// Angle between (theta, phi) and the axis at colatitude tilt, longitude 0.
double angle_to_axis(double theta, double phi, double tilt) {
  const double c = std::cos(theta) * std::cos(tilt) + std::sin(theta) * std::sin(tilt) * std::cos(phi);
  return std::acos(std::clamp(c, -1.0, 1.0));
}

}  // namespace

TEST_CASE("grid construction and weights") {
  const SphereGridFunction f = SphereGridFunction::sample(64, 128, [](double, double) { return 1.0; });
  CHECK(f.total_weight() == doctest::Approx(4 * pi).epsilon(1e-12));
  CHECK(f.theta(0) == doctest::Approx(pi / 128));
  CHECK(f.phi(0) == doctest::Approx(pi / 128));
  CHECK(f.band_area(0) == doctest::Approx(2 * pi * (1 - std::cos(pi / 64))).epsilon(1e-12));
  CHECK(f.largest_band_area() == doctest::Approx(f.band_area(31)));
  CHECK_THROWS_AS(SphereGridFunction(4, 7, std::vector<double>(28, 1.0)), InvalidArgument);
  CHECK_THROWS_AS(SphereGridFunction(4, 8, std::vector<double>(31, 1.0)), InvalidArgument);
  CHECK_THROWS_AS(SphereGridFunction(4, 8, std::vector<double>(32, -1.0)), InvalidArgument);
}

TEST_CASE("distribution function examples") {
  const auto one = SphereGridFunction::sample(128, 256, [](double, double) { return 1.0; });
  CHECK(distribution_function(one, 0.5) == doctest::Approx(4 * pi).epsilon(1e-12));
  CHECK(distribution_function(one, 1.0) == 0.0);
  const auto hump =
      SphereGridFunction::sample(128, 256, [](double t, double) { return std::max(std::cos(t), 0.0); });
  CHECK(std::abs(distribution_function(hump, 0.5) - pi) <= hump.largest_band_area());
  CHECK_THROWS_AS(distribution_function(one, -0.1), InvalidArgument);
}

TEST_CASE("decreasing rearrangement examples") {
  const auto three = SphereGridFunction::sample(32, 64, [](double, double) { return 3.0; });
  for (double s : {0.0, 1.0, 6.0, 12.5}) CHECK(decreasing_rearrangement(three, s) == 3.0);
  CHECK(decreasing_rearrangement(three, 4 * pi) == 0.0);
  const auto hump =
      SphereGridFunction::sample(256, 512, [](double t, double) { return std::max(std::cos(t), 0.0); });
  CHECK(decreasing_rearrangement(hump, pi) == doctest::Approx(0.5).epsilon(0.01));
  CHECK_THROWS_AS(decreasing_rearrangement(hump, -1e-3), InvalidArgument);
  CHECK_THROWS_AS(decreasing_rearrangement(hump, 4 * pi + 1e-6), InvalidArgument);
}

TEST_CASE("decreasing rearrangement is a generalized inverse of the distribution function") {
  oracle::Rng rng(71);
  std::vector<double> values(16 * 32);
  for (double& v : values) v = std::floor(rng.uniform(0.0, 6.0));
  const SphereGridFunction f(16, 32, values);
  double previous = decreasing_rearrangement(f, 0.0);
  for (int k = 1; k <= 200; ++k) {
    const double s = 4 * pi * k / 200.0;
    const double u = decreasing_rearrangement(f, s);
    CHECK(u <= previous);
    CHECK(distribution_function(f, u) <= s + 1e-12);
    previous = u;
  }
}

TEST_CASE("symmetric rearrangement of a tilted half-space hump") {
  oracle::Rng rng(73);
  for (int trial = 0; trial < 3; ++trial) {
    const double tilt = rng.uniform(0.2, 2.9);
    const auto f = SphereGridFunction::sample(256, 512, [&](double t, double p) {
      return std::max(std::cos(angle_to_axis(t, p, tilt)), 0.0);
    });
    const SphereGridFunction g = symmetric_decreasing_rearrangement(f);
    double worst = 0.0;
    for (std::size_t j = 0; j < g.n_theta(); ++j) {
      worst = std::max(worst, std::abs(g.value(j, 0) - std::max(std::cos(g.theta(j)), 0.0)));
    }
    CHECK(worst < 0.02);
  }
}

TEST_CASE("symmetric rearrangement properties on random smooth functions") {
  oracle::Rng rng(79);
  for (int trial = 0; trial < 4; ++trial) {
    const double tilt = rng.uniform(0.0, pi), width = rng.uniform(0.3, 1.2), floor = rng.uniform(0.0, 0.5);
    const auto f = SphereGridFunction::sample(256, 512, [&](double t, double p) {
      const double a = angle_to_axis(t, p, tilt);
      return floor + std::exp(-a * a / (width * width)) * (1.0 + 0.3 * std::cos(3 * p) * std::sin(t));
    });
    const SphereGridFunction g = symmetric_decreasing_rearrangement(f);
    for (std::size_t j = 0; j < g.n_theta(); ++j) {
      for (std::size_t k = 1; k < g.n_phi(); ++k) REQUIRE(g.value(j, k) == g.value(j, 0));
      if (j > 0) CHECK(g.value(j, 0) <= g.value(j - 1, 0));
    }
    const double slack = f.largest_band_area();
    for (int l = 0; l <= 20; ++l) {
      const double t = l * 0.07;
      CHECK(std::abs(distribution_function(f, t) - distribution_function(g, t)) <= slack + 1e-12);
    }
    CHECK(l2_norm_squared(g) == doctest::Approx(l2_norm_squared(f)).epsilon(0.005));
    CHECK(dirichlet_energy(g) <= 1.01 * dirichlet_energy(f));
  }
}

TEST_CASE("rearrangement is idempotent on symmetric non-increasing functions") {
  const auto f = SphereGridFunction::sample(64, 128, [](double t, double) { return 1.0 + std::cos(t); });
  const SphereGridFunction g = symmetric_decreasing_rearrangement(f);
  for (std::size_t i = 0; i < f.values().size(); ++i) {
    CHECK(g.values()[i] == doctest::Approx(f.values()[i]).epsilon(1e-12));
  }
}

TEST_CASE("band indicator rearranges to the hemisphere") {
  const auto band = SphereGridFunction::sample(
      240, 16, [](double t, double) { return t > pi / 3 && t < 2 * pi / 3 ? 1.0 : 0.0; });
  const SphereGridFunction g = symmetric_decreasing_rearrangement(band);
  for (std::size_t j = 0; j < g.n_theta(); ++j) {
    const double expected = g.theta(j) < pi / 2 ? 1.0 : 0.0;
    CHECK(g.value(j, 0) == expected);
  }
}

TEST_CASE("rotated cap eigenfunction has a smaller Rayleigh quotient after rearrangement") {
  const CapEigenfunction u(solve_cap_eigen_weighted(CapSpec(3, 1.2)));
  const auto f = SphereGridFunction::sample(256, 512, [&](double t, double p) {
    return u.value(angle_to_axis(t, p, 0.9));
  });
  const SphereGridFunction g = symmetric_decreasing_rearrangement(f);
  const double qf = dirichlet_energy(f) / l2_norm_squared(f);
  const double qg = dirichlet_energy(g) / l2_norm_squared(g);
  CHECK(qg <= 1.01 * qf);
  CHECK(qf == doctest::Approx(cap_eigenvalue(3, 1.2)).epsilon(0.02));
}

TEST_CASE("cap measure closed forms") {
  CHECK(cap_measure(3, pi / 2) == doctest::Approx(2 * pi).epsilon(1e-13));
  CHECK(cap_measure(4, pi / 2) == doctest::Approx(pi * pi).epsilon(1e-13));
  oracle::Rng rng(83);
  for (int trial = 0; trial < 100; ++trial) {
    const double t = rng.uniform(0.01, pi - 0.01);
    CHECK(cap_measure(3, t) == doctest::Approx(2 * pi * (1 - std::cos(t))).epsilon(1e-13));
    // S^3: 2 pi (t - sin t cos t).
    CHECK(cap_measure(4, t) == doctest::Approx(2 * pi * (t - std::sin(t) * std::cos(t))).epsilon(1e-12));
  }
  CHECK_THROWS_AS(cap_measure(2, 1.0), InvalidArgument);
  CHECK_THROWS_AS(cap_measure(3, pi), InvalidArgument);
}

TEST_CASE("Dirichlet energy examples") {
  const auto c = SphereGridFunction::sample(64, 128, [](double, double) { return 2.5; });
  CHECK(dirichlet_energy(c) == 0.0);
  // cos(theta) takes negative values, which grid functions reject; shift by one.
  const auto shifted = SphereGridFunction::sample(256, 512, [](double t, double) { return 1.0 + std::cos(t); });
  CHECK(dirichlet_energy(shifted) == doctest::Approx(8 * pi / 3).epsilon(0.01));
  const auto hump =
      SphereGridFunction::sample(256, 512, [](double t, double) { return std::max(std::cos(t), 0.0); });
  CHECK(dirichlet_energy(hump) == doctest::Approx(4 * pi / 3).epsilon(0.01));
  const auto tilted = SphereGridFunction::sample(256, 512, [](double t, double p) {
    return 1.0 + std::cos(angle_to_axis(t, p, 1.1));
  });
  CHECK(dirichlet_energy(tilted) == doctest::Approx(8 * pi / 3).epsilon(0.01));
}

TEST_CASE("CSV export") {
  const auto f = SphereGridFunction::sample(2, 4, [](double t, double) { return t; });
  std::ostringstream out;
  write_csv(f, out);
  const std::string text = out.str();
  CHECK(text.rfind("theta,phi,value\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 9);
}
