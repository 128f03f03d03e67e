#include "acflab/cap_spectrum.hpp"

#include <array>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <boost/numeric/odeint.hpp>

#include "acflab/error.hpp"
#include "acflab/special_functions.hpp"
#include "acflab/tridiagonal.hpp"

namespace acflab {

namespace {

constexpr double kPi = std::numbers::pi;

void check_grid_size(std::size_t m) {
  require(m >= 16, "grid size must be at least 16");
}

double richardson(double coarse, double fine) { return (4.0 * fine - coarse) / 3.0; }

EigenResult combine_richardson(const EigenResult& coarse, EigenResult fine) {
  fine.error_estimate = std::abs(fine.lambda - coarse.lambda) / 3.0;
  fine.lambda = richardson(coarse.lambda, fine.lambda);
  return fine;
}

// Makes the samples nonnegative (the first eigenvector has one sign; the
// clamp only removes rounding-level negatives next to a Dirichlet end) and
// normalizes them in the discrete norm sum weight_i f_i^2 h_i.
double normalize(std::vector<double>& f, const std::vector<double>& density,
                 const std::vector<double>& cell) {
  double total = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    f[i] = std::max(f[i], 0.0);
    total += density[i] * f[i] * f[i] * cell[i];
  }
  if (!(total > 0.0)) throw SolverError("eigenfunction has zero norm");
  const double inv = 1.0 / std::sqrt(total);
  double check = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    f[i] *= inv;
    check += density[i] * f[i] * f[i] * cell[i];
  }
  return std::sqrt(check);
}

EigenResult weighted_single_grid(const CapSpec& cap, std::size_t m) {
  const int n = cap.n();
  const ColatitudeGrid grid = ColatitudeGrid::staggered(cap.theta0(), m);
  const double h = grid.spacing();
  const double h2 = h * h;
  const int power = n - 2;

  std::vector<double> face(m + 1), mass(m);
  for (std::size_t k = 0; k <= m; ++k) face[k] = std::pow(std::sin(k * h), power);
  face[0] = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    mass[i] = std::pow(std::sin(grid.nodes[i]), power);
    if (!(mass[i] > 0.0) || !std::isfinite(mass[i])) {
      throw SolverError("weighted eigenproblem is not symmetric positive definite: mass " +
                        std::to_string(mass[i]) + " at node " + std::to_string(i));
    }
  }

  // A u = lambda B u with B = diag(mass); the Dirichlet value at theta0 sits
  // on the last face, imposed through the ghost value -u_{m-1}.
  SymmetricTridiagonal t;
  t.diagonal.resize(m);
  t.off_diagonal.resize(m - 1);
  for (std::size_t i = 0; i < m; ++i) {
    double a = (face[i] + face[i + 1]) / h2;
    if (i + 1 == m) a += face[m] / h2;
    t.diagonal[i] = a / mass[i];
  }
  for (std::size_t i = 0; i + 1 < m; ++i) {
    t.off_diagonal[i] = -face[i + 1] / h2 / std::sqrt(mass[i] * mass[i + 1]);
  }

  const Eigenpair pair = smallest_eigenpair(t);
  std::vector<double> u(m);
  for (std::size_t i = 0; i < m; ++i) u[i] = std::abs(pair.vector[i]) / std::sqrt(mass[i]);

  // Rayleigh quotient in flux form: a sum of nonnegative terms, so it keeps
  // relative accuracy when lambda is tiny compared with the matrix norm.
  double energy = 2.0 * face[m] * u[m - 1] * u[m - 1];
  for (std::size_t k = 1; k < m; ++k) {
    const double du = u[k] - u[k - 1];
    energy += face[k] * du * du;
  }
  double norm = 0.0;
  for (std::size_t i = 0; i < m; ++i) norm += mass[i] * u[i] * u[i];

  EigenResult result;
  result.lambda = energy / h2 / norm;
  result.formulation = Formulation::Weighted;
  result.normalization = normalize(u, mass, grid.weights);
  result.eigenfunction = std::move(u);
  result.grid = grid;
  return result;
}

// (Delta_h t^a) / t^a - a (a - 1) / t^2 at t = i h: the amount by which the
// three-point stencil misses the second derivative of t^a.
double frobenius_correction(double a, double t, double h) {
  const double x = h / t;
  if (x > 0.5) {
    const double ta = std::pow(t, a);
    const double below = t > h ? std::pow(t - h, a) : 0.0;
    return (std::pow(t + h, a) - 2.0 * ta + below) / (h * h * ta) - a * (a - 1.0) / (t * t);
  }
  // (1+x)^a - 2 + (1-x)^a = 2 sum_k C(a, 2k) x^{2k}; drop the k = 1 term.
  double binom = a * (a - 1.0) / 2.0;
  double xpow = x * x;
  double sum = 0.0;
  for (int k = 2; k < 200; ++k) {
    binom *= (a - 2.0 * k + 2.0) * (a - 2.0 * k + 1.0) / ((2.0 * k - 1.0) * (2.0 * k));
    xpow *= x * x;
    const double term = binom * xpow;
    sum += term;
    if (std::abs(term) <= 1e-18 * std::abs(sum) || binom == 0.0) break;
  }
  return 2.0 * sum / (h * h);
}

EigenResult schroedinger_single_grid(const PotentialSpec& potential, double theta0,
                                     std::size_t m) {
  const ColatitudeGrid grid = ColatitudeGrid::interior(theta0, m);
  const double h = grid.spacing();
  const double h2 = h * h;
  const double a = potential.frobenius_exponent();
  const bool corrected = potential.pole_coefficient != 0.0;

  std::vector<double> effective(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double t = grid.nodes[i];
    double v = potential.value(t);
    if (corrected) v += frobenius_correction(a, t, h);
    if (!std::isfinite(v)) {
      throw SolverError("potential is not finite at theta = " + std::to_string(t));
    }
    effective[i] = v;
  }

  SymmetricTridiagonal t;
  t.diagonal.resize(m);
  t.off_diagonal.assign(m - 1, -1.0 / h2);
  for (std::size_t i = 0; i < m; ++i) t.diagonal[i] = 2.0 / h2 + effective[i];

  const Eigenpair pair = smallest_eigenpair(t);
  std::vector<double> v(m);
  for (std::size_t i = 0; i < m; ++i) v[i] = std::abs(pair.vector[i]);

  double kinetic = v[0] * v[0] + v[m - 1] * v[m - 1];
  for (std::size_t k = 1; k < m; ++k) {
    const double dv = v[k] - v[k - 1];
    kinetic += dv * dv;
  }
  double potential_energy = 0.0, norm = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    potential_energy += effective[i] * v[i] * v[i];
    norm += v[i] * v[i];
  }

  EigenResult result;
  result.lambda = (kinetic / h2 + potential_energy) / norm;
  result.formulation = Formulation::Schroedinger;
  const std::vector<double> unit(m, 1.0);
  result.normalization = normalize(v, unit, grid.weights);
  result.eigenfunction = std::move(v);
  result.grid = grid;
  return result;
}

using ShootingState = std::array<double, 2>;

class RadialShooter {
 public:
  RadialShooter(int n, double lambda, double tolerance)
      : n_(n), lambda_(lambda), tolerance_(tolerance) {}

  void operator()(const ShootingState& x, ShootingState& dxdt, double t) const {
    dxdt[0] = x[1];
    dxdt[1] = -(n_ - 2.0) * std::cos(t) / std::sin(t) * x[1] - lambda_ * x[0];
  }

  /// Advances (x, t) to target. Returns true (and stops early) if
  /// stop_at_zero and u becomes <= 0 on the way.
  bool advance(ShootingState& x, double& t, double target, double& dt, bool stop_at_zero) {
    namespace odeint = boost::numeric::odeint;
    auto stepper = odeint::make_controlled(tolerance_, tolerance_,
                                           odeint::runge_kutta_dopri5<ShootingState>());
    int steps = 0;
    while (target - t > 1e-15 * target) {
      if (t + dt > target) dt = target - t;
      if (stepper.try_step(std::ref(*this), x, t, dt) == odeint::fail) {
        if (++steps > 5'000'000) throw SolverError("shooting integration stalled");
        continue;
      }
      if (++steps > 5'000'000) throw SolverError("shooting integration stalled");
      if (stop_at_zero && x[0] <= 0.0) return true;
    }
    t = target;
    return stop_at_zero && x[0] <= 0.0;
  }

  ShootingState start(double eps) const { return {1.0, -lambda_ * eps / (n_ - 1.0)}; }

 private:
  int n_;
  double lambda_;
  double tolerance_;
};

bool has_zero_before(const CapSpec& cap, double lambda, const ShootingOptions& options) {
  RadialShooter shooter(cap.n(), lambda, options.ode_tolerance);
  ShootingState x = shooter.start(options.start);
  double t = options.start;
  double dt = 0.1 * options.start;
  return shooter.advance(x, t, cap.theta0(), dt, true);
}

}  // namespace

CapSpec::CapSpec(int n, double theta0) : n_(n), theta0_(theta0) {
  require(n >= 3, "cap dimension n must be at least 3, got " + std::to_string(n));
  require(theta0 > 0.0 && theta0 < kPi,
          "cap colatitude must lie in (0, pi), got " + std::to_string(theta0));
}

std::string_view to_string(Formulation f) {
  switch (f) {
    case Formulation::Weighted: return "weighted";
    case Formulation::Schroedinger: return "schroedinger";
    case Formulation::Shooting: return "shooting";
  }
  return "unknown";
}

ColatitudeGrid ColatitudeGrid::staggered(double theta0, std::size_t m) {
  require(m >= 1, "grid needs at least one node");
  require(theta0 > 0.0, "grid extent must be positive");
  ColatitudeGrid grid;
  grid.theta0 = theta0;
  grid.m = m;
  const double h = theta0 / static_cast<double>(m);
  grid.nodes.resize(m);
  grid.weights.assign(m, h);
  for (std::size_t i = 0; i < m; ++i) grid.nodes[i] = (i + 0.5) * h;
  return grid;
}

ColatitudeGrid ColatitudeGrid::interior(double theta0, std::size_t m) {
  require(m >= 1, "grid needs at least one node");
  require(theta0 > 0.0, "grid extent must be positive");
  ColatitudeGrid grid;
  grid.theta0 = theta0;
  grid.m = m;
  const double h = theta0 / static_cast<double>(m + 1);
  grid.nodes.resize(m);
  grid.weights.assign(m, h);
  for (std::size_t i = 0; i < m; ++i) grid.nodes[i] = (i + 1.0) * h;
  return grid;
}

double ColatitudeGrid::spacing() const {
  return is_staggered() ? theta0 / static_cast<double>(m) : theta0 / static_cast<double>(m + 1);
}

bool ColatitudeGrid::is_staggered() const {
  return !nodes.empty() && std::abs(nodes.front() - 0.5 * theta0 / m) <= 1e-14 * theta0;
}

double PotentialSpec::frobenius_exponent() const {
  require(pole_coefficient >= -0.25, "pole coefficient below the Hardy threshold -1/4");
  return 0.5 + std::sqrt(0.25 + pole_coefficient);
}

PotentialSpec schrodinger_potential(int n) {
  require(n >= 3, "schrodinger_potential requires n >= 3, got " + std::to_string(n));
  const double half = 0.5 * (n - 2);
  const double quarter = 0.5 * (n - 4);
  PotentialSpec spec;
  spec.name = "schrodinger:" + std::to_string(n);
  spec.value = [half, quarter](double theta) {
    const double c = std::cos(theta) / std::sin(theta);
    return half * (quarter * c * c - 1.0);
  };
  spec.derivative = [half, quarter](double theta) {
    const double s = std::sin(theta);
    return -2.0 * half * quarter * std::cos(theta) / (s * s * s);
  };
  spec.convexity = n >= 5 ? Convexity::StrictlyConvex : Convexity::NotVerified;
  spec.pole_coefficient = half * quarter;
  return spec;
}

PotentialSpec constant_potential(double c) {
  PotentialSpec spec;
  spec.name = "constant:" + std::to_string(c);
  spec.value = [c](double) { return c; };
  spec.derivative = [](double) { return 0.0; };
  spec.convexity = Convexity::NotVerified;
  return spec;
}

bool probe_strict_convexity(const PotentialSpec& potential, std::size_t points) {
  require(points >= 3, "convexity probe needs at least three points");
  const double lo = 0.05, hi = kPi - 0.05;
  const double step = (hi - lo) / static_cast<double>(points - 1);
  std::vector<double> v(points);
  for (std::size_t i = 0; i < points; ++i) v[i] = potential.value(lo + i * step);
  for (std::size_t i = 1; i + 1 < points; ++i) {
    if (!(v[i + 1] - 2.0 * v[i] + v[i - 1] > 0.0)) return false;
  }
  return true;
}

EigenResult solve_cap_eigen_weighted(const CapSpec& cap, std::size_t m,
                                     Extrapolation extrapolation) {
  check_grid_size(m);
  if (extrapolation == Extrapolation::None) return weighted_single_grid(cap, m);
  return combine_richardson(weighted_single_grid(cap, m), weighted_single_grid(cap, 2 * m));
}

EigenResult solve_dirichlet_schroedinger(const PotentialSpec& potential, double theta0,
                                         std::size_t m, Extrapolation extrapolation) {
  check_grid_size(m);
  require(theta0 > 0.0 && theta0 < kPi, "theta0 must lie in (0, pi)");
  require(static_cast<bool>(potential.value), "potential has no evaluator");
  if (extrapolation == Extrapolation::None) return schroedinger_single_grid(potential, theta0, m);
  // Interior grids halve their spacing when m + 1 doubles.
  return combine_richardson(schroedinger_single_grid(potential, theta0, m),
                            schroedinger_single_grid(potential, theta0, 2 * m + 1));
}

EigenResult solve_cap_eigen_schroedinger(const CapSpec& cap, std::size_t m,
                                         Extrapolation extrapolation) {
  return solve_dirichlet_schroedinger(schrodinger_potential(cap.n()), cap.theta0(), m,
                                      extrapolation);
}

double small_cap_asymptote(int n, double theta0) {
  require(n >= 3, "small_cap_asymptote requires n >= 3");
  require(theta0 > 0.0, "theta0 must be positive");
  require(theta0 <= 0.2, "small-cap asymptote is only meaningful for theta0 <= 0.2");
  const double zero = bessel_first_zero(0.5 * (n - 3));
  return (zero / theta0) * (zero / theta0);
}

double shooting_lambda_max(const CapSpec& cap) {
  return 10.0 * std::max(small_cap_asymptote(cap.n(), std::min(cap.theta0(), 0.2)),
                         4.0 * (cap.n() - 1));
}

EigenResult solve_cap_eigen_shooting(const CapSpec& cap, double tol,
                                     const ShootingOptions& options) {
  require(tol > 0.0, "shooting tolerance must be positive");
  require(options.start > 0.0 && options.start < cap.theta0(), "shooting start must lie inside the cap");
  require(options.samples >= 16, "shooting needs at least 16 samples");

  double lo = 0.0;
  double hi = options.lambda_max > 0.0 ? options.lambda_max : shooting_lambda_max(cap);
  if (!has_zero_before(cap, hi, options)) {
    throw SolverError("shooting found no sign change for lambda in (0, " + std::to_string(hi) + ")");
  }
  int steps = 0;
  while (hi - lo > tol) {
    if (++steps > options.max_bisections) {
      throw SolverError("shooting bisection exceeded " + std::to_string(options.max_bisections) +
                        " steps");
    }
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (has_zero_before(cap, mid, options)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }

  EigenResult result;
  result.lambda = 0.5 * (lo + hi);
  result.error_estimate = hi - lo;
  result.formulation = Formulation::Shooting;
  result.grid = ColatitudeGrid::staggered(cap.theta0(), options.samples);

  RadialShooter shooter(cap.n(), result.lambda, options.ode_tolerance);
  ShootingState x = shooter.start(options.start);
  double t = options.start;
  double dt = 0.1 * options.start;
  std::vector<double> u(options.samples), mass(options.samples);
  for (std::size_t i = 0; i < options.samples; ++i) {
    shooter.advance(x, t, result.grid.nodes[i], dt, false);
    u[i] = x[0];
    mass[i] = std::pow(std::sin(result.grid.nodes[i]), cap.n() - 2);
  }
  result.normalization = normalize(u, mass, result.grid.weights);
  result.eigenfunction = std::move(u);
  return result;
}

double cap_eigenvalue(int n, double theta0) {
  return solve_cap_eigen_weighted(CapSpec(n, theta0)).lambda;
}

CapEigenfunction::CapEigenfunction(const EigenResult& result) : theta0_(result.grid.theta0) {
  require(result.formulation != Formulation::Schroedinger,
          "cap profile needs u samples (weighted or shooting formulation)");
  require(result.grid.is_staggered(), "cap profile needs a staggered grid");
  const auto& u = result.eigenfunction;
  const std::size_t m = u.size();
  require(m >= 4, "cap profile needs at least four samples");
  const double h = result.grid.spacing();

  // Ghosts beyond theta0 from the cubic through (theta0, 0) and the last
  // three nodes.
  const std::array<double, 4> xs = {theta0_, result.grid.nodes[m - 1], result.grid.nodes[m - 2],
                                    result.grid.nodes[m - 3]};
  const std::array<double, 4> ys = {0.0, u[m - 1], u[m - 2], u[m - 3]};
  auto extrapolate = [&](double x) {
    double total = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
      double basis = 1.0;
      for (std::size_t j = 0; j < 4; ++j) {
        if (j != i) basis *= (x - xs[j]) / (xs[i] - xs[j]);
      }
      total += basis * ys[i];
    }
    return total;
  };

  std::vector<double> samples;
  samples.reserve(m + 5);
  samples.push_back(u[2]);
  samples.push_back(u[1]);
  samples.push_back(u[0]);
  samples.insert(samples.end(), u.begin(), u.end());
  samples.push_back(extrapolate(theta0_ + 0.5 * h));
  samples.push_back(extrapolate(theta0_ + 1.5 * h));
  interpolant_ = UniformCubic(-2.5 * h, h, std::move(samples));

  const double pole = interpolant_.value(0.0);
  if (!(pole > 0.0)) throw SolverError("cap eigenfunction does not peak at the pole");
  scale_ = 1.0 / pole;
}

double CapEigenfunction::value(double theta) const {
  if (theta < 0.0 || theta >= theta0_) return 0.0;
  return std::max(0.0, scale_ * interpolant_.value(theta));
}

double CapEigenfunction::derivative(double theta) const {
  if (theta < 0.0 || theta >= theta0_) return 0.0;
  return scale_ * interpolant_.derivative(theta);
}

}  // namespace acflab
