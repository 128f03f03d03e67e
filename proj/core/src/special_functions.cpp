#include "acflab/special_functions.hpp"

#include <cmath>
#include <numbers>

#include "acflab/error.hpp"

namespace acflab {

double bessel_j_series(double order, double x) {
  require(order >= 0.0, "Bessel order must be non-negative");
  require(x >= 0.0, "Bessel series argument must be non-negative");
  if (x == 0.0) return order == 0.0 ? 1.0 : 0.0;
  const long double half = 0.5L * x;
  const long double q = half * half;
  long double term = std::pow(half, static_cast<long double>(order)) /
                     std::tgamma(static_cast<long double>(order) + 1.0L);
  long double sum = term;
  for (int k = 0; k < 500; ++k) {
    term *= -q / ((k + 1.0L) * (k + 1.0L + order));
    sum += term;
    if (k > x && std::abs(term) < 1e-19L * std::abs(sum)) break;
  }
  return static_cast<double>(sum);
}

double bessel_first_zero(double order) {
  require(order >= 0.0 && order <= 10.0, "Bessel order must lie in [0, 10]");
  const double step = 0.05;
  double lo = step;
  double flo = bessel_j_series(order, lo);
  double hi = lo + step;
  double fhi = bessel_j_series(order, hi);
  while (flo * fhi > 0.0) {
    lo = hi;
    flo = fhi;
    hi += step;
    fhi = bessel_j_series(order, hi);
    if (hi > 40.0) throw SolverError("no Bessel zero found below 40");
  }
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fmid = bessel_j_series(order, mid);
    if (fmid == 0.0) return mid;
    if (flo * fmid < 0.0) {
      hi = mid;
    } else {
      lo = mid;
      flo = fmid;
    }
  }
  return 0.5 * (lo + hi);
}

double unit_sphere_measure(int k) {
  require(k >= 0, "sphere dimension must be non-negative");
  const double half = 0.5 * (k + 1);
  return 2.0 * std::pow(std::numbers::pi, half) / std::tgamma(half);
}

double sine_power_integral(int k, double theta) {
  require(k >= 0, "sine power must be non-negative");
  if (k == 0) return theta;
  if (k == 1) return 1.0 - std::cos(theta);
  const double s = std::sin(theta);
  return -std::pow(s, k - 1) * std::cos(theta) / k +
         (k - 1.0) / k * sine_power_integral(k - 2, theta);
}

}  // namespace acflab
