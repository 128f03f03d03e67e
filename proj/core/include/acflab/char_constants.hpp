#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "acflab/cap_spectrum.hpp"

namespace acflab {

/// Homogeneity degree alpha with alpha^2 + (n-2) alpha = lambda: r^alpha u
/// is harmonic on the cone over a cap whose eigenvalue is lambda.
struct CharConstant {
  double alpha = 0.0;
  double lambda = 0.0;
  int n = 0;

  /// alpha^2 + (n-2) alpha - lambda.
  double quadratic_residual() const;
};

/// Positive root in the subtraction-free form
/// lambda / (sqrt(((n-2)/2)^2 + lambda) + (n-2)/2).
CharConstant alpha_from_lambda(int n, double lambda);

/// alpha_from_lambda(n, cap_eigenvalue(n, theta0)).
CharConstant alpha_of_cap(const CapSpec& cap);

/// Unique t in [0, 1] with t lambda + (n-2) sqrt(t lambda) - lambda = 0, so
/// that t lambda = alpha^2.
double optimal_t(int n, double lambda);

/// Left side of the optimal-t equation, for residual checks.
double optimal_t_residual(int n, double lambda, double t);

struct FhSample {
  double theta0 = 0.0;
  double sum = 0.0;  // alpha(theta0) + alpha(pi - theta0)
};

struct FhScanResult {
  int n = 0;
  double theta_n = 0.0;
  double beta_n = 0.0;
  std::vector<FhSample> samples;
  /// Grid-level local minima whose value is within 1e-6 of the grid minimum.
  std::vector<double> near_minimizers;
  /// Whether golden-section refinement ran (grid minimum was interior).
  bool refined = false;
};

/// alpha(theta0, n) + alpha(pi - theta0, n).
double fh_sum(int n, double theta0);

/// Scans fh_sum on the symmetric grid theta_k = pi (k+1)/(grid_points+1),
/// then refines the grid minimum by golden section to 1e-6 in theta0.
FhScanResult fh_scan(int n, std::size_t grid_points);

struct DimensionTable {
  double theta0 = 0.0;
  std::vector<std::pair<int, double>> alphas;  // (n, alpha(theta0, n)), n = 3..n_max
  bool non_increasing = false;                 // within 1e-6 slack
  double largest_increase = 0.0;               // max_n alpha(n+1) - alpha(n)
};

DimensionTable dimension_monotonicity_check(double theta0, int n_max);

/// (lambda(theta, n) + lambda(pi - theta, n)) / (n - 2).
double gamma_n(int n, double theta);

}  // namespace acflab
