#include "acflab/tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "acflab/error.hpp"

namespace acflab {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double pivot_floor(const SymmetricTridiagonal& t) {
  double largest = 1.0;
  for (double e : t.off_diagonal) largest = std::max(largest, e * e);
  return std::numeric_limits<double>::min() * largest;
}

}  // namespace

void SymmetricTridiagonal::validate() const {
  require(!diagonal.empty(), "tridiagonal matrix must be non-empty");
  require(off_diagonal.size() + 1 == diagonal.size(),
          "off-diagonal must have exactly one entry fewer than the diagonal");
  for (double d : diagonal) require(std::isfinite(d), "non-finite diagonal entry");
  for (double e : off_diagonal) require(std::isfinite(e), "non-finite off-diagonal entry");
}

std::size_t sturm_count(const SymmetricTridiagonal& t, double x) {
  const double floor = pivot_floor(t);
  std::size_t negatives = 0;
  double q = t.diagonal[0] - x;
  if (std::abs(q) < floor) q = -floor;
  if (q < 0) ++negatives;
  for (std::size_t i = 1; i < t.size(); ++i) {
    const double e = t.off_diagonal[i - 1];
    q = t.diagonal[i] - x - e * e / q;
    if (std::abs(q) < floor) q = -floor;
    if (q < 0) ++negatives;
  }
  return negatives;
}

std::pair<double, double> gershgorin_bounds(const SymmetricTridiagonal& t) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  const std::size_t m = t.size();
  for (std::size_t i = 0; i < m; ++i) {
    double radius = 0.0;
    if (i > 0) radius += std::abs(t.off_diagonal[i - 1]);
    if (i + 1 < m) radius += std::abs(t.off_diagonal[i]);
    lo = std::min(lo, t.diagonal[i] - radius);
    hi = std::max(hi, t.diagonal[i] + radius);
  }
  return {lo, hi};
}

std::vector<double> solve_shifted_spd(const SymmetricTridiagonal& t, double shift,
                                      const std::vector<double>& rhs) {
  const std::size_t m = t.size();
  std::vector<double> pivot(m), lower(m > 0 ? m - 1 : 0), x(rhs);
  pivot[0] = t.diagonal[0] - shift;
  for (std::size_t i = 1; i < m; ++i) {
    if (!(pivot[i - 1] > 0.0)) throw SolverError("shifted tridiagonal matrix is not positive definite");
    lower[i - 1] = t.off_diagonal[i - 1] / pivot[i - 1];
    pivot[i] = t.diagonal[i] - shift - lower[i - 1] * t.off_diagonal[i - 1];
  }
  if (!(pivot[m - 1] > 0.0)) throw SolverError("shifted tridiagonal matrix is not positive definite");
  for (std::size_t i = 1; i < m; ++i) x[i] -= lower[i - 1] * x[i - 1];
  for (std::size_t i = 0; i < m; ++i) x[i] /= pivot[i];
  for (std::size_t i = m - 1; i-- > 0;) x[i] -= lower[i] * x[i + 1];
  return x;
}

Eigenpair smallest_eigenpair(const SymmetricTridiagonal& t, const EigenOptions& options) {
  t.validate();
  auto [lo, hi] = gershgorin_bounds(t);
  const double span = std::max(std::abs(lo), std::abs(hi));
  lo -= kEps * span + std::numeric_limits<double>::min();
  hi += kEps * span + std::numeric_limits<double>::min();

  Eigenpair result;
  int steps = 0;
  // Invariant: sturm_count(lo) == 0, sturm_count(hi) >= 1.
  while (true) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (hi - lo <= 2.0 * kEps * std::max(std::abs(lo), std::abs(hi))) break;
    if (steps >= options.max_bisection_steps) {
      throw SolverError("Sturm bisection did not converge within " +
                        std::to_string(options.max_bisection_steps) + " steps");
    }
    ++steps;
    if (sturm_count(t, mid) >= 1) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  result.lower = lo;
  result.upper = hi;
  result.bisection_steps = steps;

  // Shift strictly below lambda_1; the gap to lambda_1 is tiny so convergence
  // is immediate for any start vector with a lambda_1 component.
  // Rounding in the Sturm counts can leave lo a hair above lambda_1 when the
  // matrix norm dwarfs lambda_1; widen the shift until the factorization holds.
  double width = std::max(hi - lo, 4.0 * kEps * std::max(1.0, std::abs(lo)));
  const std::size_t m = t.size();
  std::vector<double> y;
  for (int attempt = 0;; ++attempt) {
    try {
      y.assign(m, 1.0);
      for (int it = 0; it < std::max(1, options.inverse_iterations); ++it) {
        y = solve_shifted_spd(t, lo - width, y);
        const double norm = std::sqrt(std::inner_product(y.begin(), y.end(), y.begin(), 0.0));
        if (!(norm > 0.0) || !std::isfinite(norm)) throw SolverError("inverse iteration broke down");
        for (double& v : y) v /= norm;
      }
      break;
    } catch (const SolverError&) {
      if (attempt >= 8) throw;
      width = std::max(width * 100.0, kEps * span);
    }
  }
  const auto first = std::find_if(y.begin(), y.end(), [](double v) { return v != 0.0; });
  if (first != y.end() && *first < 0.0) {
    for (double& v : y) v = -v;
  }

  double quotient = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    double ty = t.diagonal[i] * y[i];
    if (i > 0) ty += t.off_diagonal[i - 1] * y[i - 1];
    if (i + 1 < m) ty += t.off_diagonal[i] * y[i + 1];
    quotient += y[i] * ty;
  }
  result.value = quotient;
  result.vector = std::move(y);
  return result;
}

}  // namespace acflab
