#pragma once

// Reference values computed independently of the solvers under test.

#include <cmath>
#include <cstdint>
#include <numbers>

namespace oracle {

inline constexpr double kPi = std::numbers::pi;

// First zeros j_{nu,1} of the Bessel function J_nu (mpmath, 16 digits).
struct BesselZero {
  double order;
  double zero;
};
inline constexpr BesselZero kBesselZeros[] = {
    {0.0, 2.404825557695773}, {0.5, 3.141592653589793}, {1.0, 3.831705970207512},
    {1.5, 4.493409457909064}, {2.0, 5.135622301840683}, {2.5, 5.763459196894550},
    {3.0, 6.380161895923984}, {3.5, 6.987932000500520},
};

// n = 3 caps: smallest nu > 0 with P_nu(cos theta0) = 0 (mpmath legenp root),
// lambda = nu (nu + 1) and alpha = nu.
struct LegendreCap {
  double theta0;
  double nu;
  double lambda;
};
inline const LegendreCap kLegendreCaps[] = {
    {kPi / 6, 4.083687067028117, 20.76018712844082},
    {kPi / 4, 2.547899192667183, 9.039689488661266},
    {kPi / 3, 1.777288270158946, 4.936041865403526},
    {kPi / 2, 1.0, 2.0},
    {2 * kPi / 3, 0.6015093093912538, 0.9633227586755969},
    {3 * kPi / 4, 0.4630985617801065, 0.6775588397029096},
    {5 * kPi / 6, 0.3461839406483450, 0.4660272614111618},
};

// 2F1(-alpha, alpha + n - 2; (n-1)/2; z) by its power series in long double.
// For z = sin^2(theta0/2) this is the zonal eigenfunction of S^{n-1} with
// eigenvalue alpha (alpha + n - 2), evaluated at the cap boundary.
inline long double zonal_series(long double alpha, int n, long double z) {
  const long double a = -alpha, b = alpha + n - 2, c = 0.5L * (n - 1);
  long double term = 1.0L, sum = 1.0L;
  for (int k = 0; k < 200000; ++k) {
    term *= (a + k) * (b + k) / ((c + k) * (k + 1)) * z;
    sum += term;
    if (std::fabs(term) < 1e-22L * std::fabs(sum) && k > 8) break;
  }
  return sum;
}

// Characteristic constant of the cap: first alpha > 0 where the zonal
// function vanishes at theta0.
inline double cap_alpha(int n, double theta0) {
  const long double z = std::pow(std::sin(0.5L * theta0), 2.0L);
  long double lo = 1e-6L, step = 0.01L;
  long double hi = lo + step;
  while (zonal_series(hi, n, z) > 0.0L) {
    lo = hi;
    hi += step;
  }
  for (int it = 0; it < 200 && hi - lo > 1e-15L * hi; ++it) {
    const long double mid = 0.5L * (lo + hi);
    if (zonal_series(mid, n, z) > 0.0L) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return static_cast<double>(0.5L * (lo + hi));
}

inline double cap_lambda(int n, double theta0) {
  const double a = cap_alpha(n, theta0);
  return a * (a + n - 2.0);
}

// Small deterministic generator for property tests (SplitMix64).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  double uniform(double lo, double hi) {
    return lo + (hi - lo) * static_cast<double>(next() >> 11) * 0x1.0p-53;
  }
  int integer(int lo, int hi) { return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1)); }

 private:
  std::uint64_t state_;
};

}  // namespace oracle
