#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "acflab/interpolation.hpp"

namespace acflab {

/// Spherical cap of colatitude theta0 on the unit sphere of R^n.
class CapSpec {
 public:
  /// Throws InvalidArgument unless n >= 3 and 0 < theta0 < pi.
  CapSpec(int n, double theta0);

  int n() const { return n_; }
  double theta0() const { return theta0_; }

 private:
  int n_;
  double theta0_;
};

enum class Formulation { Weighted, Schroedinger, Shooting };
std::string_view to_string(Formulation f);

enum class Extrapolation { None, Richardson };

/// Uniform sampling of (0, theta0) without nodes on the endpoints.
struct ColatitudeGrid {
  double theta0 = 0.0;
  std::size_t m = 0;
  std::vector<double> nodes;
  std::vector<double> weights;

  /// Cell centres (i + 1/2) h with h = theta0 / m; weights h sum to theta0.
  static ColatitudeGrid staggered(double theta0, std::size_t m);
  /// Interior vertices i h, i = 1..m, with h = theta0 / (m + 1).
  static ColatitudeGrid interior(double theta0, std::size_t m);

  double spacing() const;
  bool is_staggered() const;
};

/// First Dirichlet eigenpair of a cap. The eigenfunction is nonnegative and
/// normalized in the discrete L2 norm of its formulation: the sin^{n-2}
/// weight for Weighted and Shooting, unit weight for Schroedinger (where the
/// samples are v = u sin^{(n-2)/2}).
struct EigenResult {
  double lambda = 0.0;
  ColatitudeGrid grid;
  std::vector<double> eigenfunction;
  double normalization = 0.0;
  Formulation formulation = Formulation::Weighted;
  /// |lambda_2m - lambda_m| / 3 after extrapolation, bracket width for
  /// shooting, 0 for a single raw grid.
  double error_estimate = 0.0;
};

enum class Convexity { StrictlyConvex, NotVerified };

/// Potential V on (0, pi) for the Dirichlet problem -v'' + V v = Lambda v.
struct PotentialSpec {
  std::string name;
  std::function<double(double)> value;
  std::function<double(double)> derivative;
  Convexity convexity = Convexity::NotVerified;
  /// c in V(theta) ~ c / theta^2 as theta -> 0+ (0 for potentials bounded
  /// at the pole). Must be >= -1/4.
  double pole_coefficient = 0.0;

  /// Regular Frobenius exponent a with a (a - 1) = pole_coefficient; the
  /// Dirichlet eigenfunction behaves like theta^a at the pole.
  double frobenius_exponent() const;
};

/// V(theta) = ((n-2)/2) (((n-4)/2) cot^2 theta - 1) with its exact
/// derivative; flagged StrictlyConvex iff n >= 5.
PotentialSpec schrodinger_potential(int n);
PotentialSpec constant_potential(double c);

/// True iff every second difference of V on a uniform probe grid of
/// (0.05, pi - 0.05) is positive.
bool probe_strict_convexity(const PotentialSpec& potential, std::size_t points = 257);

inline constexpr std::size_t kDefaultWeightedGrid = 512;
inline constexpr std::size_t kDefaultSchroedingerGrid = 1024;
inline constexpr double kDefaultShootingTolerance = 1e-10;

/// Weighted Sturm-Liouville form -((sin)^{n-2} u')' = lambda (sin)^{n-2} u,
/// u(theta0) = 0, finite-volume on a staggered grid (no node at the pole, zero
/// flux through the pole face). With Richardson the result combines grids m
/// and 2m and carries the eigenfunction of the finer grid.
EigenResult solve_cap_eigen_weighted(const CapSpec& cap, std::size_t m = kDefaultWeightedGrid,
                                     Extrapolation extrapolation = Extrapolation::Richardson);

/// Dirichlet problem -v'' + V v = Lambda v on (0, theta0) for an arbitrary
/// potential, on the interior-vertex grid. The pole singularity V ~ c/theta^2
/// is handled by adding to V the correction that makes the three-point stencil
/// exact on theta^a (a the Frobenius exponent); it vanishes for c = 0.
EigenResult solve_dirichlet_schroedinger(const PotentialSpec& potential, double theta0,
                                         std::size_t m,
                                         Extrapolation extrapolation = Extrapolation::Richardson);

/// Cap eigenvalue through the Liouville-transformed problem with
/// V = schrodinger_potential(n).
EigenResult solve_cap_eigen_schroedinger(const CapSpec& cap,
                                         std::size_t m = kDefaultSchroedingerGrid,
                                         Extrapolation extrapolation = Extrapolation::Richardson);

struct ShootingOptions {
  double start = 1e-6;              // regular-series start offset from the pole
  double ode_tolerance = 1e-13;     // absolute and relative step tolerance
  std::size_t samples = 512;        // staggered samples of the returned eigenfunction
  double lambda_max = 0.0;          // 0 selects shooting_lambda_max(cap)
  int max_bisections = 200;
};

/// Shooting on u'' + (n-2) cot(theta) u' + lambda u = 0 from the pole with
/// u(eps) = 1, u'(eps) = -lambda eps / (n-1). Bisection keeps [lo, hi] with no
/// zero of u on (eps, theta0] at lo and a zero at hi, so it converges to the
/// first eigenvalue even when the bracket spans higher ones. Throws
/// SolverError if lambda_max admits no zero.
EigenResult solve_cap_eigen_shooting(const CapSpec& cap, double tol = kDefaultShootingTolerance,
                                     const ShootingOptions& options = {});

/// 10 max(small_cap_asymptote(n, min(theta0, 0.2)), 4 (n - 1)).
double shooting_lambda_max(const CapSpec& cap);

/// (j_{(n-3)/2,1} / theta0)^2: first Dirichlet eigenvalue of the flat
/// (n-1)-disk of radius theta0. Requires 0 < theta0 <= 0.2.
double small_cap_asymptote(int n, double theta0);

/// Best available cap eigenvalue: weighted form, default grid, Richardson.
double cap_eigenvalue(int n, double theta0);

/// Continuous profile of a cap eigenfunction from a staggered-grid result:
/// even across the pole, zero outside [0, theta0], scaled to value 1 at the
/// pole.
class CapEigenfunction {
 public:
  explicit CapEigenfunction(const EigenResult& result);

  double value(double theta) const;
  double derivative(double theta) const;
  double theta0() const { return theta0_; }
  /// Factor applied to the stored samples to reach unit pole value.
  double scale() const { return scale_; }

 private:
  double theta0_ = 0.0;
  double scale_ = 1.0;
  UniformCubic interpolant_;
};

}  // namespace acflab
