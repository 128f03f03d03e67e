#include <doctest.h>

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>
#include <vector>

#include "acflab/error.hpp"
#include "acflab/interpolation.hpp"
#include "acflab/quadrature.hpp"
#include "acflab/special_functions.hpp"
#include "acflab/tridiagonal.hpp"
#include "oracles.hpp"

using namespace acflab;
using std::numbers::pi;

namespace {

SymmetricTridiagonal random_tridiagonal(oracle::Rng& rng, std::size_t m, double scale) {
  SymmetricTridiagonal t;
  t.diagonal.resize(m);
  t.off_diagonal.resize(m - 1);
  for (auto& d : t.diagonal) d = rng.uniform(-scale, scale);
  for (auto& e : t.off_diagonal) e = rng.uniform(-scale, scale);
  return t;
}

double eigen_smallest(const SymmetricTridiagonal& t) {
  Eigen::VectorXd d = Eigen::Map<const Eigen::VectorXd>(t.diagonal.data(), t.diagonal.size());
  Eigen::VectorXd e =
      Eigen::Map<const Eigen::VectorXd>(t.off_diagonal.data(), t.off_diagonal.size());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(d, e, Eigen::EigenvaluesOnly);
  return solver.eigenvalues()(0);
}

}  // namespace

TEST_CASE("smallest tridiagonal eigenvalue matches a dense reference solver") {
  oracle::Rng rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    const auto m = static_cast<std::size_t>(rng.integer(2, 120));
    const double scale = std::pow(10.0, rng.uniform(-3.0, 4.0));
    const SymmetricTridiagonal t = random_tridiagonal(rng, m, scale);
    const Eigenpair pair = smallest_eigenpair(t);
    const double reference = eigen_smallest(t);
    CHECK(pair.value == doctest::Approx(reference).epsilon(1e-10).scale(scale));
    CHECK(pair.lower <= pair.upper);
  }
}

TEST_CASE("eigenvector satisfies the eigen equation and is sign-normalized") {
  oracle::Rng rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const auto m = static_cast<std::size_t>(rng.integer(3, 80));
    const SymmetricTridiagonal t = random_tridiagonal(rng, m, 1.0);
    const Eigenpair pair = smallest_eigenpair(t);
    double norm = 0.0, residual = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      double ty = t.diagonal[i] * pair.vector[i];
      if (i > 0) ty += t.off_diagonal[i - 1] * pair.vector[i - 1];
      if (i + 1 < m) ty += t.off_diagonal[i] * pair.vector[i + 1];
      residual = std::max(residual, std::abs(ty - pair.value * pair.vector[i]));
      norm += pair.vector[i] * pair.vector[i];
    }
    CHECK(norm == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(residual < 1e-7);
  }
}

TEST_CASE("Sturm count equals the number of eigenvalues below the probe") {
  SymmetricTridiagonal t;
  t.diagonal.assign(5, 2.0);
  t.off_diagonal.assign(4, -1.0);
  // Eigenvalues 2 - 2 cos(k pi / 6), k = 1..5.
  for (int k = 1; k <= 5; ++k) {
    const double ev = 2.0 - 2.0 * std::cos(k * pi / 6.0);
    CHECK(sturm_count(t, ev - 1e-9) == static_cast<std::size_t>(k - 1));
    CHECK(sturm_count(t, ev + 1e-9) == static_cast<std::size_t>(k));
  }
}

TEST_CASE("shifted solve rejects an indefinite shift") {
  SymmetricTridiagonal t;
  t.diagonal.assign(4, 2.0);
  t.off_diagonal.assign(3, -1.0);
  const std::vector<double> rhs(4, 1.0);
  CHECK_NOTHROW(solve_shifted_spd(t, 0.0, rhs));
  CHECK_THROWS_AS(solve_shifted_spd(t, 1.0, rhs), SolverError);
}

TEST_CASE("malformed tridiagonal input is rejected") {
  SymmetricTridiagonal t;
  t.diagonal = {1.0, 2.0};
  t.off_diagonal = {1.0, 2.0};
  CHECK_THROWS_AS(smallest_eigenpair(t), InvalidArgument);
  t.off_diagonal = {std::nan("")};
  CHECK_THROWS_AS(smallest_eigenpair(t), InvalidArgument);
}

TEST_CASE("Gauss-Legendre integrates polynomials of degree 2k-1 exactly") {
  oracle::Rng rng(3);
  for (int order = 1; order <= 24; ++order) {
    const double a = rng.uniform(-2.0, 0.0), b = rng.uniform(0.5, 3.0);
    const QuadratureRule rule = gauss_legendre(order, a, b);
    const int degree = 2 * order - 1;
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) sum += rule.weights[i] * std::pow(rule.nodes[i], degree);
    const double exact = (std::pow(b, degree + 1) - std::pow(a, degree + 1)) / (degree + 1);
    CHECK(sum == doctest::Approx(exact).epsilon(1e-12).scale(std::pow(std::max(-a, b), degree + 1)));
    for (std::size_t i = 1; i < rule.size(); ++i) CHECK(rule.nodes[i] > rule.nodes[i - 1]);
  }
}

TEST_CASE("graded rule integrates algebraic singularities at the origin") {
  for (double p : {-0.7, -0.3, 0.2, 1.5}) {
    const QuadratureRule rule = graded_rule(0.8, 100, 0.5, 12);
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) sum += rule.weights[i] * std::pow(rule.nodes[i], p);
    CHECK(sum == doctest::Approx(std::pow(0.8, p + 1) / (p + 1)).epsilon(1e-9));
  }
}

TEST_CASE("Bessel zeros agree with tabulated values") {
  for (const auto& z : oracle::kBesselZeros) {
    CHECK(bessel_first_zero(z.order) == doctest::Approx(z.zero).epsilon(1e-12));
    CHECK(std::abs(bessel_j_series(z.order, z.zero)) < 1e-12);
  }
  CHECK_THROWS_AS(bessel_first_zero(-1.0), InvalidArgument);
}

TEST_CASE("sphere measures and sine-power integrals") {
  CHECK(unit_sphere_measure(1) == doctest::Approx(2 * pi));
  CHECK(unit_sphere_measure(2) == doctest::Approx(4 * pi));
  CHECK(unit_sphere_measure(3) == doctest::Approx(2 * pi * pi));
  CHECK(sine_power_integral(0, 1.3) == doctest::Approx(1.3));
  CHECK(sine_power_integral(1, 1.3) == doctest::Approx(1.0 - std::cos(1.3)));
  CHECK(sine_power_integral(2, pi) == doctest::Approx(pi / 2));
  CHECK(sine_power_integral(5, pi) == doctest::Approx(16.0 / 15.0));
}

TEST_CASE("cubic interpolation reproduces cubics and their derivatives") {
  auto f = [](double x) { return 0.3 * x * x * x - x * x + 2.0 * x - 0.5; };
  auto df = [](double x) { return 0.9 * x * x - 2.0 * x + 2.0; };
  std::vector<double> samples;
  for (int i = 0; i < 12; ++i) samples.push_back(f(-1.0 + 0.25 * i));
  const UniformCubic c(-1.0, 0.25, samples);
  for (double x = c.lower(); x <= c.upper(); x += 0.0371) {
    CHECK(c.value(x) == doctest::Approx(f(x)).epsilon(1e-12));
    CHECK(c.derivative(x) == doctest::Approx(df(x)).epsilon(1e-11));
  }
}
