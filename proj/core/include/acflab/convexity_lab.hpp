#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "acflab/cap_spectrum.hpp"

namespace acflab {

/// First Dirichlet eigenpair of -v'' + V v = Lambda v on (0, theta0).
struct BvpSolution {
  double theta0 = 0.0;
  double Lambda = 0.0;
  double error_estimate = 0.0;
  ColatitudeGrid grid;      // interior vertices; v vanishes at 0 and theta0
  std::vector<double> v;    // nonnegative, sum v_i^2 h = 1
  /// One-sided derivative at the pole. 0 when v ~ theta^a with a > 1 and
  /// +infinity when a < 1 (the Hardy-critical n = 3 potential).
  double v_prime_0 = 0.0;
  double v_prime_theta0 = 0.0;
};

inline constexpr std::size_t kDefaultBvpGrid = 1024;
inline constexpr std::size_t kDefaultVdotGrid = 4096;

/// Extrapolated eigenvalue and endpoint slopes from grids m and 2m+1; v is the
/// finer grid's eigenfunction.
BvpSolution bvp_first_eigen(const PotentialSpec& potential, double theta0,
                            std::size_t m = kDefaultBvpGrid);

struct DerivativeReport {
  double theta0 = 0.0;
  double step = 0.0;
  double finite_difference = 0.0;  // (Lambda(theta0+h) - Lambda(theta0-h)) / (2h)
  double boundary_flux = 0.0;      // -v'(theta0)^2
  double discrepancy = 0.0;        // |finite_difference - boundary_flux|
  double tolerance = 0.0;          // max(1e-3 |finite_difference|, 1e-6)
  bool agrees = false;
};

DerivativeReport lambda_derivative_check(const PotentialSpec& potential, double theta0,
                                         double h = 1e-3);

struct PotentialDerivativeReport {
  DerivativeReport flux;
  double potential_integral = 0.0;  // integral of V' v^2 over (0, theta0)
  double pole_slope_squared = 0.0;  // v'(0)^2
  double expression = 0.0;          // potential_integral - pole_slope_squared
  double discrepancy = 0.0;         // max pairwise distance among the three values
  bool agrees = false;
};

/// Compares integral(V' v^2) - v'(0)^2 with the finite-difference derivative
/// and with -v'(theta0)^2. Requires V' and a finite pole slope.
PotentialDerivativeReport second_derivative_expression_check(const PotentialSpec& potential,
                                                             double theta0, double h = 1e-3);

struct VdotProfile {
  double theta0 = 0.0;
  double step = 0.0;
  std::vector<double> nodes;
  std::vector<double> v;
  std::vector<double> vdot;
  double theta_bar = 0.0;          // interpolated sign change
  std::size_t sign_changes = 0;
  std::vector<std::size_t> sign_change_indices;
  double orthogonality = 0.0;      // integral of v vdot
  double endpoint_vdot = 0.0;      // vdot extrapolated to theta0
  double v_prime_theta0 = 0.0;
  double vdot_prime_0 = 0.0;       // one-sided slope of vdot at the pole

  bool single_sign_change() const { return sign_changes == 1; }
  /// Negative before theta_bar and positive after, ignoring samples below the
  /// noise threshold.
  bool sign_pattern_holds() const;
};

/// d v / d theta0 at fixed theta. Eigenfunctions at theta0 +- h, +- 2h are
/// computed on grids with the same node count, so node i sits at
/// i t / (m+1); the five-point difference in theta0 of those samples differs
/// from vdot by the drift term (theta / theta0) v', which is removed.
VdotProfile vdot_profile(const PotentialSpec& potential, double theta0, double h = 1e-3,
                         std::size_t m = kDefaultVdotGrid);

struct ConvexityRow {
  double theta0 = 0.0;
  double Lambda = 0.0;
  double first_difference = 0.0;   // centered; NaN at the ends
  double second_difference = 0.0;  // centered; NaN at the ends
};

struct ConvexityTable {
  std::string potential;
  std::vector<ConvexityRow> rows;
  bool positive = false;
  bool decreasing = false;
  bool convex = false;             // measured
  bool convexity_asserted = false; // true iff V is flagged StrictlyConvex
  double min_second_difference = 0.0;

  /// positive && decreasing && (convex || !convexity_asserted).
  bool passed() const;
};

/// Lambda on a uniform grid of theta0 values with centered differences.
ConvexityTable convexity_scan(const PotentialSpec& potential, std::span<const double> thetas,
                              std::size_t m = kDefaultBvpGrid);

}  // namespace acflab
