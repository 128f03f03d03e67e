#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace acflab {

/// Real symmetric tridiagonal matrix stored by its diagonal (size m) and
/// sub/super diagonal (size m-1).
struct SymmetricTridiagonal {
  std::vector<double> diagonal;
  std::vector<double> off_diagonal;

  std::size_t size() const { return diagonal.size(); }
  void validate() const;
};

/// Number of eigenvalues strictly less than x (Sturm sequence / LDL^T inertia).
std::size_t sturm_count(const SymmetricTridiagonal& t, double x);

/// Gershgorin enclosure [lower, upper] of the spectrum.
std::pair<double, double> gershgorin_bounds(const SymmetricTridiagonal& t);

struct EigenOptions {
  int max_bisection_steps = 256;
  int inverse_iterations = 3;
};

struct Eigenpair {
  double value = 0.0;          // Rayleigh quotient of the returned vector
  double lower = 0.0;          // final bisection bracket
  double upper = 0.0;
  std::vector<double> vector;  // unit Euclidean norm, first nonzero entry > 0
  int bisection_steps = 0;
};

/// Smallest eigenpair by Sturm bisection followed by inverse iteration with
/// a shift just below the bracket, so the shifted matrix is positive definite
/// and the factorization needs no pivoting.
/// Throws SolverError if the bracket does not close within the step budget.
Eigenpair smallest_eigenpair(const SymmetricTridiagonal& t, const EigenOptions& options = {});

/// Solves (T - shift I) x = rhs for a positive definite shifted matrix.
/// Throws SolverError on a non-positive pivot.
std::vector<double> solve_shifted_spd(const SymmetricTridiagonal& t, double shift,
                                      const std::vector<double>& rhs);

}  // namespace acflab
