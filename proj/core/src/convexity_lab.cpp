#include "acflab/convexity_lab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "acflab/error.hpp"
#include "acflab/parallel.hpp"

namespace acflab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kExponentSlack = 1e-12;
// Samples of vdot below this fraction of max |vdot| carry no reliable sign.
constexpr double kSignThreshold = 1e-9;

double richardson(double coarse, double fine) { return (4.0 * fine - coarse) / 3.0; }

double pole_slope(const EigenResult& r, double exponent) {
  if (exponent < 1.0 - kExponentSlack) return std::numeric_limits<double>::infinity();
  if (exponent > 1.0 + kExponentSlack) return 0.0;
  const double h = r.grid.spacing();
  return (4.0 * r.eigenfunction[0] - r.eigenfunction[1]) / (2.0 * h);
}

double end_slope(const EigenResult& r) {
  const auto& v = r.eigenfunction;
  const std::size_t m = v.size();
  return (v[m - 2] - 4.0 * v[m - 1]) / (2.0 * r.grid.spacing());
}

// Trapezoid rule for integral(V' v^2); the pole value of the integrand is
// extrapolated since V' may be singular there while V' v^2 stays bounded.
double potential_derivative_integral(const PotentialSpec& potential, const EigenResult& r) {
  const auto& v = r.eigenfunction;
  const auto& t = r.grid.nodes;
  const double h = r.grid.spacing();
  std::vector<double> f(v.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    f[i] = potential.derivative(t[i]) * v[i] * v[i];
    sum += f[i];
  }
  const double pole = 3.0 * f[0] - 3.0 * f[1] + f[2];
  return h * (sum + 0.5 * pole);
}

}  // namespace

BvpSolution bvp_first_eigen(const PotentialSpec& potential, double theta0, std::size_t m) {
  const EigenResult coarse =
      solve_dirichlet_schroedinger(potential, theta0, m, Extrapolation::None);
  EigenResult fine = solve_dirichlet_schroedinger(potential, theta0, 2 * m + 1, Extrapolation::None);
  const double a = potential.frobenius_exponent();

  BvpSolution s;
  s.theta0 = theta0;
  s.Lambda = richardson(coarse.lambda, fine.lambda);
  s.error_estimate = std::abs(fine.lambda - coarse.lambda) / 3.0;
  s.v_prime_0 = a < 1.0 - kExponentSlack || a > 1.0 + kExponentSlack
                    ? pole_slope(fine, a)
                    : richardson(pole_slope(coarse, a), pole_slope(fine, a));
  s.v_prime_theta0 = richardson(end_slope(coarse), end_slope(fine));
  s.grid = std::move(fine.grid);
  s.v = std::move(fine.eigenfunction);
  return s;
}

DerivativeReport lambda_derivative_check(const PotentialSpec& potential, double theta0, double h) {
  require(h > 0.0 && theta0 - h > 0.0 && theta0 + h < kPi,
          "derivative step must keep theta0 +- h inside (0, pi)");
  DerivativeReport report;
  report.theta0 = theta0;
  report.step = h;
  const double plus = bvp_first_eigen(potential, theta0 + h).Lambda;
  const double minus = bvp_first_eigen(potential, theta0 - h).Lambda;
  const BvpSolution centre = bvp_first_eigen(potential, theta0);
  report.finite_difference = (plus - minus) / (2.0 * h);
  report.boundary_flux = -centre.v_prime_theta0 * centre.v_prime_theta0;
  report.discrepancy = std::abs(report.finite_difference - report.boundary_flux);
  report.tolerance = std::max(1e-3 * std::abs(report.finite_difference), 1e-6);
  report.agrees = report.discrepancy <= report.tolerance;
  return report;
}

PotentialDerivativeReport second_derivative_expression_check(const PotentialSpec& potential,
                                                             double theta0, double h) {
  require(static_cast<bool>(potential.derivative), "potential has no derivative evaluator");
  PotentialDerivativeReport report;
  report.flux = lambda_derivative_check(potential, theta0, h);

  const std::size_t m = kDefaultBvpGrid;
  const EigenResult coarse =
      solve_dirichlet_schroedinger(potential, theta0, m, Extrapolation::None);
  const EigenResult fine =
      solve_dirichlet_schroedinger(potential, theta0, 2 * m + 1, Extrapolation::None);
  report.potential_integral = richardson(potential_derivative_integral(potential, coarse),
                                         potential_derivative_integral(potential, fine));
  const double slope = bvp_first_eigen(potential, theta0, m).v_prime_0;
  if (!std::isfinite(slope)) {
    throw InvalidArgument("pole slope is infinite for potential " + potential.name);
  }
  report.pole_slope_squared = slope * slope;
  report.expression = report.potential_integral - report.pole_slope_squared;

  const double a = report.flux.finite_difference;
  const double b = report.flux.boundary_flux;
  const double c = report.expression;
  report.discrepancy = std::max({std::abs(a - b), std::abs(a - c), std::abs(b - c)});
  report.agrees = report.discrepancy <= report.flux.tolerance;
  return report;
}

bool VdotProfile::sign_pattern_holds() const {
  if (sign_changes != 1) return false;
  double peak = 0.0;
  for (double d : vdot) peak = std::max(peak, std::abs(d));
  const double floor = kSignThreshold * peak;
  for (std::size_t i = 0; i < vdot.size(); ++i) {
    if (std::abs(vdot[i]) <= floor) continue;
    if (nodes[i] < theta_bar && vdot[i] > 0.0) return false;
    if (nodes[i] > theta_bar && vdot[i] < 0.0) return false;
  }
  return true;
}

VdotProfile vdot_profile(const PotentialSpec& potential, double theta0, double h, std::size_t m) {
  require(h > 0.0 && theta0 - h > 0.0 && theta0 + h < kPi,
          "vdot step must keep theta0 +- h inside (0, pi)");
  require(theta0 - 2.0 * h > 0.0 && theta0 + 2.0 * h < kPi,
          "vdot step must keep theta0 +- 2h inside (0, pi)");
  const auto solve = [&](double t) {
    return solve_dirichlet_schroedinger(potential, t, m, Extrapolation::None).eigenfunction;
  };
  const std::vector<double> plus = solve(theta0 + h), minus = solve(theta0 - h);
  const std::vector<double> plus2 = solve(theta0 + 2.0 * h), minus2 = solve(theta0 - 2.0 * h);
  const EigenResult centre =
      solve_dirichlet_schroedinger(potential, theta0, m, Extrapolation::None);

  VdotProfile p;
  p.theta0 = theta0;
  p.step = h;
  p.nodes = centre.grid.nodes;
  p.v = centre.eigenfunction;
  p.vdot.resize(m);
  const double dx = centre.grid.spacing();
  const auto& v = centre.eigenfunction;
  for (std::size_t i = 0; i < m; ++i) {
    const double left = i == 0 ? 0.0 : v[i - 1];
    const double right = i + 1 == m ? 0.0 : v[i + 1];
    const double slope = (right - left) / (2.0 * dx);
    const double drift =
        (8.0 * (plus[i] - minus[i]) - (plus2[i] - minus2[i])) / (12.0 * h);
    p.vdot[i] = drift - (p.nodes[i] / theta0) * slope;
  }

  double peak = 0.0;
  for (double d : p.vdot) peak = std::max(peak, std::abs(d));
  const double floor = kSignThreshold * peak;
  int last_sign = 0;
  std::size_t last_index = 0;
  for (std::size_t i = 0; i < m; ++i) {
    if (std::abs(p.vdot[i]) <= floor) continue;
    const int sign = p.vdot[i] > 0.0 ? 1 : -1;
    if (last_sign != 0 && sign != last_sign) {
      ++p.sign_changes;
      p.sign_change_indices.push_back(i);
      if (p.sign_changes == 1) {
        const double a = p.vdot[last_index], b = p.vdot[i];
        p.theta_bar = p.nodes[last_index] + (p.nodes[i] - p.nodes[last_index]) * a / (a - b);
      }
    }
    last_sign = sign;
    last_index = i;
  }

  double inner = 0.0;
  for (std::size_t i = 0; i < m; ++i) inner += v[i] * p.vdot[i];
  p.orthogonality = inner * dx;
  p.endpoint_vdot = 3.0 * p.vdot[m - 1] - 3.0 * p.vdot[m - 2] + p.vdot[m - 3];
  p.v_prime_theta0 = end_slope(centre);
  p.vdot_prime_0 = (4.0 * p.vdot[0] - p.vdot[1]) / (2.0 * dx);
  return p;
}

bool ConvexityTable::passed() const { return positive && decreasing && (convex || !convexity_asserted); }

ConvexityTable convexity_scan(const PotentialSpec& potential, std::span<const double> thetas,
                              std::size_t m) {
  require(thetas.size() >= 3, "convexity scan needs at least three colatitudes");
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    require(thetas[i] > 0.0 && thetas[i] < kPi, "scan colatitudes must lie in (0, pi)");
    if (i > 0) require(thetas[i] > thetas[i - 1], "scan colatitudes must increase");
  }
  const double step = thetas[1] - thetas[0];
  for (std::size_t i = 2; i < thetas.size(); ++i) {
    require(std::abs(thetas[i] - thetas[i - 1] - step) <= 1e-9 * step,
            "scan colatitudes must be uniform");
  }

  ConvexityTable table;
  table.potential = potential.name;
  table.rows.resize(thetas.size());
  parallel_for(thetas.size(), [&](std::size_t i) {
    table.rows[i].theta0 = thetas[i];
    table.rows[i].Lambda = bvp_first_eigen(potential, thetas[i], m).Lambda;
  });

  const double nan = std::numeric_limits<double>::quiet_NaN();
  table.positive = true;
  table.decreasing = true;
  table.convex = true;
  table.convexity_asserted = potential.convexity == Convexity::StrictlyConvex;
  table.min_second_difference = std::numeric_limits<double>::infinity();
  auto& rows = table.rows;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!(rows[i].Lambda > 0.0)) table.positive = false;
    if (i > 0 && !(rows[i].Lambda < rows[i - 1].Lambda)) table.decreasing = false;
    if (i == 0 || i + 1 == rows.size()) {
      rows[i].first_difference = nan;
      rows[i].second_difference = nan;
      continue;
    }
    rows[i].first_difference = (rows[i + 1].Lambda - rows[i - 1].Lambda) / (2.0 * step);
    rows[i].second_difference =
        (rows[i + 1].Lambda - 2.0 * rows[i].Lambda + rows[i - 1].Lambda) / (step * step);
    table.min_second_difference = std::min(table.min_second_difference, rows[i].second_difference);
    if (!(rows[i].second_difference > 0.0)) table.convex = false;
  }
  return table;
}

}  // namespace acflab
