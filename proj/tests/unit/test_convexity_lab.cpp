#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "acflab/cap_spectrum.hpp"
#include "acflab/convexity_lab.hpp"
#include "acflab/error.hpp"
#include "oracles.hpp"

using namespace acflab;
using std::numbers::pi;

TEST_CASE("free Dirichlet problem on (0, 1)") {
  const BvpSolution s = bvp_first_eigen(constant_potential(0.0), 1.0);
  CHECK(s.Lambda == doctest::Approx(pi * pi).epsilon(1e-10));
  double norm = 0.0, worst = 0.0;
  for (std::size_t i = 0; i < s.v.size(); ++i) {
    norm += s.v[i] * s.v[i] * s.grid.weights[i];
    worst = std::max(worst, std::abs(s.v[i] - std::sqrt(2.0) * std::sin(pi * s.grid.nodes[i])));
    CHECK(s.v[i] > 0.0);
  }
  CHECK(norm == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(worst < 1e-5);
  CHECK(s.v_prime_0 == doctest::Approx(std::sqrt(2.0) * pi).epsilon(1e-7));
  CHECK(s.v_prime_theta0 == doctest::Approx(-std::sqrt(2.0) * pi).epsilon(1e-7));
}

TEST_CASE("constant potentials shift the spectrum") {
  oracle::Rng rng(61);
  for (int trial = 0; trial < 20; ++trial) {
    const double c = rng.uniform(-3.0, 3.0), theta0 = rng.uniform(0.2, 3.0);
    const double exact = (pi / theta0) * (pi / theta0) + c;
    CHECK(bvp_first_eigen(constant_potential(c), theta0, 256).Lambda ==
          doctest::Approx(exact).epsilon(1e-8));
  }
}

TEST_CASE("Schroedinger potentials reproduce the cap eigenvalues") {
  CHECK(bvp_first_eigen(schrodinger_potential(5), pi / 2).Lambda == doctest::Approx(4.0).epsilon(1e-7));
  for (int n = 3; n <= 10; ++n) {
    for (double t : {pi / 6, pi / 3, 2 * pi / 3, 5 * pi / 6}) {
      CAPTURE(n);
      CAPTURE(t);
      const BvpSolution s = bvp_first_eigen(schrodinger_potential(n), t);
      CHECK(s.Lambda == doctest::Approx(cap_eigenvalue(n, t)).epsilon(1e-5));
      CHECK(s.v_prime_theta0 < 0.0);
      CHECK(s.v_prime_0 >= 0.0);
    }
  }
  CHECK(std::isinf(bvp_first_eigen(schrodinger_potential(3), 1.0).v_prime_0));
  CHECK(bvp_first_eigen(schrodinger_potential(5), 1.0).v_prime_0 == 0.0);
  CHECK(bvp_first_eigen(schrodinger_potential(4), 1.0).v_prime_0 > 0.0);
}

TEST_CASE("eigenvalue derivative equals minus the squared boundary slope") {
  const DerivativeReport a = lambda_derivative_check(constant_potential(0.0), 1.0, 1e-4);
  CHECK(a.finite_difference == doctest::Approx(-2 * pi * pi).epsilon(1e-4));
  CHECK(a.boundary_flux == doctest::Approx(-2 * pi * pi).epsilon(1e-4));
  CHECK(a.agrees);
  const DerivativeReport b = lambda_derivative_check(constant_potential(0.0), 2.0);
  CHECK(b.finite_difference == doctest::Approx(-2 * pi * pi / 8).epsilon(1e-4));
  CHECK(b.boundary_flux == doctest::Approx(-2 * pi * pi / 8).epsilon(1e-4));
  const DerivativeReport c = lambda_derivative_check(schrodinger_potential(5), pi / 2);
  CHECK(c.discrepancy <= 1e-4 * std::abs(c.finite_difference));
  for (int n = 3; n <= 10; ++n) {
    for (double t : {0.5, 1.2, 2.0, 2.7}) {
      CAPTURE(n);
      CAPTURE(t);
      const DerivativeReport r = lambda_derivative_check(schrodinger_potential(n), t);
      CHECK(r.agrees);
      CHECK(r.finite_difference < 0.0);
    }
  }
  CHECK_THROWS_AS(lambda_derivative_check(constant_potential(0.0), 0.5, 0.6), InvalidArgument);
}

TEST_CASE("integral expression for the eigenvalue derivative") {
  const PotentialDerivativeReport free = second_derivative_expression_check(constant_potential(0.0), 1.0);
  CHECK(free.potential_integral == 0.0);
  CHECK(free.expression == doctest::Approx(-2 * pi * pi).epsilon(1e-6));
  CHECK(free.agrees);
  const PotentialDerivativeReport six = second_derivative_expression_check(schrodinger_potential(6), pi / 3);
  CHECK(six.agrees);
  CHECK(six.discrepancy <= 1e-3 * std::abs(six.flux.finite_difference));
  const PotentialDerivativeReport four = second_derivative_expression_check(schrodinger_potential(4), 1.0);
  CHECK(four.potential_integral == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
  CHECK(four.expression == doctest::Approx(four.flux.boundary_flux).epsilon(1e-5));
  for (int n = 5; n <= 10; ++n) {
    CHECK(second_derivative_expression_check(schrodinger_potential(n), 2.0).agrees);
  }
  CHECK_THROWS_AS(second_derivative_expression_check(schrodinger_potential(3), 1.0), InvalidArgument);
}

TEST_CASE("free vdot matches its closed form") {
  const VdotProfile p = vdot_profile(constant_potential(0.0), 1.0, 1e-3, 2048);
  REQUIRE(p.nodes.size() == p.vdot.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < p.nodes.size(); ++i) {
    const double t = p.nodes[i];
    const double exact = -std::sqrt(2.0) * (0.5 * std::sin(pi * t) + pi * t * std::cos(pi * t));
    worst = std::max(worst, std::abs(p.vdot[i] - exact));
  }
  CHECK(worst < 1e-4);
  // Root of sin(pi t)/2 + pi t cos(pi t) in (0, 1).
  CHECK(p.theta_bar == doctest::Approx(0.584607046700821).epsilon(1e-5));
  CHECK(p.single_sign_change());
  CHECK(p.sign_pattern_holds());
  CHECK(std::abs(p.orthogonality) < 1e-6);
  CHECK(p.vdot_prime_0 <= 0.0);
  CHECK(p.endpoint_vdot == doctest::Approx(-p.v_prime_theta0).epsilon(1e-4));
}

TEST_CASE("vdot sign structure for strictly convex potentials") {
  for (int n = 5; n <= 10; ++n) {
    for (double t : {0.6, pi / 2, 2.4}) {
      CAPTURE(n);
      CAPTURE(t);
      const VdotProfile p = vdot_profile(schrodinger_potential(n), t);
      CHECK(p.single_sign_change());
      CHECK(p.sign_pattern_holds());
      CHECK(p.theta_bar > 0.0);
      CHECK(p.theta_bar < t);
      CHECK(std::abs(p.orthogonality) < 1e-6);
      CHECK(p.endpoint_vdot == doctest::Approx(-p.v_prime_theta0).epsilon(1e-4));
      // Exact value is 0 for n >= 5; the stencil sees eigenvector rounding
      // amplified by 1 / (h dx).
      double peak = 0.0;
      for (double d : p.vdot) peak = std::max(peak, std::abs(d));
      CHECK(p.vdot_prime_0 <= 1e-4 * peak / t);
    }
  }
}

TEST_CASE("convexity scans") {
  std::vector<double> thetas;
  for (int k = 0; k < 64; ++k) thetas.push_back(0.15 + (pi - 0.3) * k / 63.0);
  const ConvexityTable five = convexity_scan(schrodinger_potential(5), thetas, 512);
  CHECK(five.rows.size() == 64);
  CHECK(five.positive);
  CHECK(five.decreasing);
  CHECK(five.convex);
  CHECK(five.convexity_asserted);
  CHECK(five.min_second_difference > 0.0);
  CHECK(five.passed());
  CHECK(std::isnan(five.rows.front().second_difference));

  const ConvexityTable free = convexity_scan(constant_potential(0.0), thetas, 256);
  CHECK(free.passed());
  CHECK(free.convex);
  for (const ConvexityRow& r : free.rows) {
    CHECK(r.Lambda == doctest::Approx(pi * pi / (r.theta0 * r.theta0)).epsilon(1e-8));
  }

  const ConvexityTable three = convexity_scan(schrodinger_potential(3), thetas, 512);
  CHECK(three.decreasing);
  CHECK_FALSE(three.convexity_asserted);
  CHECK(three.passed());

  const std::vector<double> uneven{0.5, 0.6, 0.8};
  CHECK_THROWS_AS(convexity_scan(constant_potential(0.0), uneven), InvalidArgument);
}

TEST_CASE("n = 3 eigenvalue is concave near the full sphere") {
  // Legendre-root oracle, 30 digits: second difference of lambda at
  // theta0 = 2.946488..., step (pi - 0.3)/63, is -6.72106554e-4.
  const double h = (pi - 0.3) / 63.0, t = 0.15 + 62.0 * h;
  const PotentialSpec v = schrodinger_potential(3);
  const double d2 = bvp_first_eigen(v, t - h).Lambda - 2 * bvp_first_eigen(v, t).Lambda +
                    bvp_first_eigen(v, t + h).Lambda;
  CHECK(d2 == doctest::Approx(-6.72106554e-4).epsilon(1e-4));
  CHECK(cap_eigenvalue(3, t) == doctest::Approx(0.25458880412185875).epsilon(1e-7));
}
