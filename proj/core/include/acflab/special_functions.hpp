#pragma once

namespace acflab {

/// Bessel function of the first kind J_order(x) by its power series.
/// Accurate to ~1e-13 relative for 0 <= x <= 20 and 0 <= order <= 10.
double bessel_j_series(double order, double x);

/// First positive zero j_{order,1} of J_order, bracketed by a forward scan and
/// refined by bisection on the series.
double bessel_first_zero(double order);

/// Measure of the unit k-sphere S^k in R^{k+1}: 2 pi^{(k+1)/2} / Gamma((k+1)/2).
double unit_sphere_measure(int k);

/// \int_0^theta sin^k(t) dt by the reduction recurrence.
double sine_power_integral(int k, double theta);

}  // namespace acflab
