#include "acflab/char_constants.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <numbers>
#include <string>

#include "acflab/error.hpp"
#include "acflab/parallel.hpp"

namespace acflab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNearMinimumSlack = 1e-6;
constexpr double kThetaTolerance = 1e-6;

}  // namespace

double CharConstant::quadratic_residual() const {
  return alpha * alpha + (n - 2.0) * alpha - lambda;
}

CharConstant alpha_from_lambda(int n, double lambda) {
  require(n >= 3, "characteristic constant needs n >= 3, got " + std::to_string(n));
  require(lambda >= 0.0 && std::isfinite(lambda),
          "eigenvalue must be finite and nonnegative, got " + std::to_string(lambda));
  const double half = 0.5 * (n - 2);
  CharConstant c;
  c.n = n;
  c.lambda = lambda;
  c.alpha = lambda / (std::sqrt(half * half + lambda) + half);
  return c;
}

CharConstant alpha_of_cap(const CapSpec& cap) {
  return alpha_from_lambda(cap.n(), cap_eigenvalue(cap.n(), cap.theta0()));
}

double optimal_t(int n, double lambda) {
  require(n >= 3, "optimal_t needs n >= 3");
  require(lambda > 0.0 && std::isfinite(lambda), "optimal_t needs lambda > 0");
  // sqrt(t lambda) = alpha, written without cancellation.
  const double alpha = alpha_from_lambda(n, lambda).alpha;
  return std::min(1.0, alpha * alpha / lambda);
}

double optimal_t_residual(int n, double lambda, double t) {
  const double tl = t * lambda;
  return tl + (n - 2.0) * std::sqrt(tl) - lambda;
}

double fh_sum(int n, double theta0) {
  return alpha_of_cap(CapSpec(n, theta0)).alpha + alpha_of_cap(CapSpec(n, kPi - theta0)).alpha;
}

FhScanResult fh_scan(int n, std::size_t grid_points) {
  require(n >= 3, "fh_scan needs n >= 3");
  require(grid_points >= 64, "fh_scan needs at least 64 grid points");

  const std::size_t count = grid_points;
  std::vector<double> thetas(count), alphas(count);
  for (std::size_t k = 0; k < count; ++k) {
    thetas[k] = kPi * static_cast<double>(k + 1) / static_cast<double>(count + 1);
  }
  parallel_for(count, [&](std::size_t k) { alphas[k] = alpha_of_cap(CapSpec(n, thetas[k])).alpha; });

  FhScanResult result;
  result.n = n;
  result.samples.resize(count);
  std::size_t best = 0;
  for (std::size_t k = 0; k < count; ++k) {
    // pi - theta_k is grid point count-1-k, so the table is symmetric by
    // construction.
    result.samples[k] = {thetas[k], alphas[k] + alphas[count - 1 - k]};
    if (result.samples[k].sum < result.samples[best].sum) best = k;
  }
  result.theta_n = result.samples[best].theta0;
  result.beta_n = result.samples[best].sum;

  for (std::size_t k = 0; k < count; ++k) {
    const double s = result.samples[k].sum;
    const bool left_ok = k == 0 || s <= result.samples[k - 1].sum;
    const bool right_ok = k + 1 == count || s <= result.samples[k + 1].sum;
    if (left_ok && right_ok && s <= result.beta_n + kNearMinimumSlack) {
      result.near_minimizers.push_back(result.samples[k].theta0);
    }
  }

  if (best > 0 && best + 1 < count) {
    double a = thetas[best - 1], b = thetas[best + 1];
    const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - ratio * (b - a), x2 = a + ratio * (b - a);
    double f1 = fh_sum(n, x1), f2 = fh_sum(n, x2);
    while (b - a > kThetaTolerance) {
      if (f1 <= f2) {
        b = x2;
        x2 = x1;
        f2 = f1;
        x1 = b - ratio * (b - a);
        f1 = fh_sum(n, x1);
      } else {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + ratio * (b - a);
        f2 = fh_sum(n, x2);
      }
    }
    const double mid = 0.5 * (a + b);
    const double fmid = fh_sum(n, mid);
    if (fmid < result.beta_n) {
      result.theta_n = mid;
      result.beta_n = fmid;
    }
    result.refined = true;
  }
  return result;
}

DimensionTable dimension_monotonicity_check(double theta0, int n_max) {
  require(theta0 > 0.0 && theta0 < kPi, "theta0 must lie in (0, pi)");
  require(n_max >= 4, "dimension table needs n_max >= 4");
  DimensionTable table;
  table.theta0 = theta0;
  const std::size_t count = static_cast<std::size_t>(n_max - 2);
  table.alphas.resize(count);
  parallel_for(count, [&](std::size_t k) {
    const int n = static_cast<int>(k) + 3;
    table.alphas[k] = {n, alpha_of_cap(CapSpec(n, theta0)).alpha};
  });
  table.largest_increase = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k + 1 < count; ++k) {
    table.largest_increase =
        std::max(table.largest_increase, table.alphas[k + 1].second - table.alphas[k].second);
  }
  table.non_increasing = table.largest_increase <= kNearMinimumSlack;
  return table;
}

double gamma_n(int n, double theta) {
  require(theta > 0.0 && theta < kPi, "theta must lie in (0, pi)");
  return (cap_eigenvalue(n, theta) + cap_eigenvalue(n, kPi - theta)) / (n - 2.0);
}

}  // namespace acflab
