#include "acflab/acf_functional.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>
#include <string>

#include <json.hpp>

#include "acflab/char_constants.hpp"
#include "acflab/error.hpp"
#include "acflab/parallel.hpp"
#include "acflab/quadrature.hpp"
#include "acflab/special_functions.hpp"

namespace acflab {

namespace {

constexpr double kPi = std::numbers::pi;

void check_dimension(int n) {
  require(n >= 3 && n <= kMaxAcfDimension,
          "ACF evaluation supports 3 <= n <= " + std::to_string(kMaxAcfDimension) + ", got " +
              std::to_string(n));
}

Point scaled(const Point& a, double s) {
  Point out{};
  for (int i = 0; i < kMaxAcfDimension; ++i) out[i] = a[i] * s;
  return out;
}

Point axpy(double s, const Point& x, const Point& y) {
  Point out{};
  for (int i = 0; i < kMaxAcfDimension; ++i) out[i] = s * x[i] + y[i];
  return out;
}

Point unit_axis(int n) {
  Point p{};
  p[static_cast<std::size_t>(n - 1)] = 1.0;
  return p;
}

Point normalized(const Point& a, int n) {
  const double len = norm(a, n);
  require(len > 0.0, "cannot normalize a zero vector");
  return scaled(a, 1.0 / len);
}

// Orthonormal basis of the complement of `axis` (unit) in R^n.
std::vector<Point> complement_basis(const Point& axis, int n) {
  std::vector<Point> basis;
  for (int k = 0; k < n && static_cast<int>(basis.size()) < n - 1; ++k) {
    Point e{};
    e[static_cast<std::size_t>(k)] = 1.0;
    e = axpy(-dot(e, axis, n), axis, e);
    for (const Point& b : basis) e = axpy(-dot(e, b, n), b, e);
    const double len = norm(e, n);
    if (len > 1e-6) basis.push_back(scaled(e, 1.0 / len));
  }
  return basis;
}

struct AngleRule {
  std::vector<double> angle;
  std::vector<double> weight;
};

// Colatitude rule with weight sin^k(theta) on panels between the sorted
// breaks. For k = 1 the Gauss points are placed in cos(theta).
AngleRule colatitude_rule(int k, std::vector<double> breaks, int order) {
  breaks.push_back(0.0);
  breaks.push_back(kPi);
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  AngleRule rule;
  for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
    if (k == 1) {
      const QuadratureRule g = gauss_legendre(order, std::cos(breaks[p + 1]), std::cos(breaks[p]));
      for (std::size_t i = 0; i < g.size(); ++i) {
        rule.angle.push_back(std::acos(std::clamp(g.nodes[i], -1.0, 1.0)));
        rule.weight.push_back(g.weights[i]);
      }
    } else {
      const QuadratureRule g = gauss_legendre(order, breaks[p], breaks[p + 1]);
      for (std::size_t i = 0; i < g.size(); ++i) {
        rule.angle.push_back(g.nodes[i]);
        rule.weight.push_back(g.weights[i] * std::pow(std::sin(g.nodes[i]), k));
      }
    }
  }
  return rule;
}

// Rule on S^k as coordinate vectors in R^{k+1}.
void unit_sphere_rule(int k, int inner_order, int azimuth,
                      std::vector<std::vector<double>>& points, std::vector<double>& weights) {
  points.clear();
  weights.clear();
  if (k == 1) {
    for (int j = 0; j < azimuth; ++j) {
      const double phi = (j + 0.5) * 2.0 * kPi / azimuth;
      points.push_back({std::cos(phi), std::sin(phi)});
      weights.push_back(2.0 * kPi / azimuth);
    }
    return;
  }
  std::vector<std::vector<double>> sub;
  std::vector<double> sub_weights;
  unit_sphere_rule(k - 1, inner_order, azimuth, sub, sub_weights);
  const AngleRule polar = colatitude_rule(k - 1, {}, inner_order);
  for (std::size_t a = 0; a < polar.angle.size(); ++a) {
    const double c = std::cos(polar.angle[a]), s = std::sin(polar.angle[a]);
    for (std::size_t b = 0; b < sub.size(); ++b) {
      std::vector<double> x(static_cast<std::size_t>(k) + 1);
      x[0] = c;
      for (std::size_t i = 0; i < sub[b].size(); ++i) x[i + 1] = s * sub[b][i];
      points.push_back(std::move(x));
      weights.push_back(polar.weight[a] * sub_weights[b]);
    }
  }
}

double squared_gradient(const FieldSample& s, int n) { return dot(s.gradient, s.gradient, n); }

FieldEvaluator zero_field() {
  return [](const Point&) { return FieldSample{}; };
}

// Member r^alpha e(theta) supported on the cap of colatitude theta0 about p.
FieldEvaluator cone_member(int n, const Point& p, double alpha,
                           std::shared_ptr<const CapEigenfunction> profile) {
  return [n, p, alpha, profile](const Point& x) {
    FieldSample out;
    const double r = norm(x, n);
    if (r == 0.0) return out;
    const Point omega = scaled(x, 1.0 / r);
    const double c = std::clamp(dot(omega, p, n), -1.0, 1.0);
    const double theta = std::acos(c);
    if (theta >= profile->theta0()) return out;
    const double u = profile->value(theta);
    const double du = profile->derivative(theta);
    const double radial = std::pow(r, alpha);
    out.value = radial * u;
    const double scale = radial / r;
    out.gradient = scaled(omega, scale * alpha * u);
    const double s = std::sin(theta);
    if (s > 0.0) {
      // e_theta = (cos(theta) omega - p) / sin(theta)
      const Point e_theta = scaled(axpy(-1.0, p, scaled(omega, c)), 1.0 / s);
      out.gradient = axpy(scale * du, e_theta, out.gradient);
    }
    return out;
  };
}

// --- gridded members (n = 3) ---------------------------------------------

class GriddedField {
 public:
  GriddedField(const FieldEvaluator& source, const Point& axis, std::size_t n_r,
               std::size_t n_theta, std::size_t n_phi)
      : nr_(n_r), nt_(n_theta), np_(n_phi), axis_(axis) {
    const auto basis = complement_basis(axis, 3);
    e1_ = basis[0];
    e2_ = basis[1];
    dr_ = 1.0 / static_cast<double>(nr_);
    dt_ = kPi / static_cast<double>(nt_);
    dp_ = 2.0 * kPi / static_cast<double>(np_);
    values_.resize(nr_ * nt_ * np_);
    parallel_for(nr_, [&](std::size_t i) {
      for (std::size_t j = 0; j < nt_; ++j) {
        for (std::size_t k = 0; k < np_; ++k) {
          values_[index(i, j, k)] = std::max(0.0, source(position(i, j, k)).value);
        }
      }
    });
    gradients_.resize(values_.size());
    parallel_for(nr_, [&](std::size_t i) {
      for (std::size_t j = 0; j < nt_; ++j) {
        for (std::size_t k = 0; k < np_; ++k) gradients_[index(i, j, k)] = node_gradient(i, j, k);
      }
    });
  }

  FieldSample operator()(const Point& x) const {
    FieldSample out;
    const double r = norm(x, 3);
    if (r == 0.0) return out;
    const double c = std::clamp(dot(x, axis_, 3) / r, -1.0, 1.0);
    const double theta = std::acos(c);
    double phi = std::atan2(dot(x, e2_, 3), dot(x, e1_, 3));
    if (phi < 0.0) phi += 2.0 * kPi;

    std::size_t i0, j0, k0, i1, j1, k1;
    double ti, tj, tk;
    bracket(r / dr_ - 0.5, nr_, i0, i1, ti);
    bracket(theta / dt_ - 0.5, nt_, j0, j1, tj);
    const double sk = phi / dp_ - 0.5;
    const double fk = std::floor(sk);
    tk = sk - fk;
    k0 = static_cast<std::size_t>((static_cast<long>(fk) + static_cast<long>(np_)) %
                                  static_cast<long>(np_));
    k1 = (k0 + 1) % np_;
    // Keep the support sharp: across a zero/nonzero pair of samples take the
    // nearest one instead of blending.
    const std::size_t in = ti < 0.5 ? i0 : i1, kn = tk < 0.5 ? k0 : k1;
    const std::size_t jn = tj < 0.5 ? j0 : j1;
    if (sharp(values_[index(in, j0, kn)], values_[index(in, j1, kn)])) tj = tj < 0.5 ? 0.0 : 1.0;
    if (sharp(values_[index(i0, jn, kn)], values_[index(i1, jn, kn)])) ti = ti < 0.5 ? 0.0 : 1.0;
    if (sharp(values_[index(in, jn, k0)], values_[index(in, jn, k1)])) tk = tk < 0.5 ? 0.0 : 1.0;

    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) {
        for (int d = 0; d < 2; ++d) {
          const double w = (a ? ti : 1.0 - ti) * (b ? tj : 1.0 - tj) * (d ? tk : 1.0 - tk);
          if (w == 0.0) continue;
          const std::size_t id = index(a ? i1 : i0, b ? j1 : j0, d ? k1 : k0);
          out.value += w * values_[id];
          out.gradient = axpy(w, gradients_[id], out.gradient);
        }
      }
    }
    // Below the first radial node the field is continued linearly to 0.
    if (r < 0.5 * dr_) out.value *= r / (0.5 * dr_);
    return out;
  }

 private:
  static bool sharp(double a, double b) { return (a == 0.0) != (b == 0.0); }

  static void bracket(double s, std::size_t count, std::size_t& lo, std::size_t& hi, double& t) {
    if (s <= 0.0) {
      lo = hi = 0;
      t = 0.0;
      return;
    }
    const double last = static_cast<double>(count - 1);
    if (s >= last) {
      lo = hi = count - 1;
      t = 0.0;
      return;
    }
    const double f = std::floor(s);
    lo = static_cast<std::size_t>(f);
    hi = lo + 1;
    t = s - f;
  }

  std::size_t index(std::size_t i, std::size_t j, std::size_t k) const {
    return (i * nt_ + j) * np_ + k;
  }

  Point direction(double theta, double phi, double& st, Point& e_theta, Point& e_phi) const {
    st = std::sin(theta);
    const double ct = std::cos(theta);
    const Point q = axpy(std::cos(phi), e1_, scaled(e2_, std::sin(phi)));
    e_theta = axpy(-st, axis_, scaled(q, ct));
    e_phi = axpy(-std::sin(phi), e1_, scaled(e2_, std::cos(phi)));
    return axpy(ct, axis_, scaled(q, st));
  }

  Point position(std::size_t i, std::size_t j, std::size_t k) const {
    double st;
    Point et, ep;
    const Point omega = direction((j + 0.5) * dt_, (k + 0.5) * dp_, st, et, ep);
    return scaled(omega, (i + 0.5) * dr_);
  }

  // Derivative along one grid line from samples f(-1), f(0), f(+1) and the
  // second neighbours f(-2), f(+2), with spacing h. Falls back to one-sided
  // stencils when a neighbour lies outside the support (value 0).
  static double line_derivative(double m2, double m1, double c, double p1, double p2, double h,
                                bool has_m2, bool has_p2) {
    const bool left = m1 != 0.0, right = p1 != 0.0;
    if (left == right) return (p1 - m1) / (2.0 * h);
    if (right) {
      return has_p2 && p2 != 0.0 ? (-3.0 * c + 4.0 * p1 - p2) / (2.0 * h) : (p1 - c) / h;
    }
    return has_m2 && m2 != 0.0 ? (3.0 * c - 4.0 * m1 + m2) / (2.0 * h) : (c - m1) / h;
  }

  Point node_gradient(std::size_t i, std::size_t j, std::size_t k) const {
    const double c = values_[index(i, j, k)];
    if (c == 0.0) return Point{};
    const double r = (i + 0.5) * dr_;

    double dr;
    if (i == 0) {
      // Quadratic through the origin (where the field vanishes) and the
      // first two radial nodes.
      dr = c / dr_ + values_[index(1, j, k)] / (3.0 * dr_);
    } else if (i + 1 == nr_) {
      dr = (3.0 * c - 4.0 * values_[index(i - 1, j, k)] + values_[index(i - 2, j, k)]) /
           (2.0 * dr_);
    } else {
      dr = (values_[index(i + 1, j, k)] - values_[index(i - 1, j, k)]) / (2.0 * dr_);
    }

    const std::size_t half = np_ / 2;
    auto at_theta = [&](long jj) {
      if (jj < 0) return values_[index(i, static_cast<std::size_t>(-jj - 1), (k + half) % np_)];
      if (jj >= static_cast<long>(nt_)) {
        return values_[index(i, static_cast<std::size_t>(2 * static_cast<long>(nt_) - jj - 1),
                             (k + half) % np_)];
      }
      return values_[index(i, static_cast<std::size_t>(jj), k)];
    };
    const long jl = static_cast<long>(j);
    const double dtheta = line_derivative(at_theta(jl - 2), at_theta(jl - 1), c, at_theta(jl + 1),
                                          at_theta(jl + 2), dt_, true, true);

    auto at_phi = [&](long kk) {
      const long np = static_cast<long>(np_);
      return values_[index(i, j, static_cast<std::size_t>(((kk % np) + np) % np))];
    };
    const long kl = static_cast<long>(k);
    const double dphi = line_derivative(at_phi(kl - 2), at_phi(kl - 1), c, at_phi(kl + 1),
                                        at_phi(kl + 2), dp_, true, true);

    double st;
    Point et, ep;
    const Point omega = direction((j + 0.5) * dt_, (k + 0.5) * dp_, st, et, ep);
    Point g = scaled(omega, dr);
    g = axpy(dtheta / r, et, g);
    g = axpy(dphi / (r * st), ep, g);
    return g;
  }

  std::size_t nr_, nt_, np_;
  Point axis_, e1_{}, e2_{};
  double dr_ = 0.0, dt_ = 0.0, dp_ = 0.0;
  std::vector<double> values_;
  std::vector<Point> gradients_;
};

// Radial rule for the shell [a, b]; graded toward 0 when a == 0.
QuadratureRule shell_rule(double a, double b, const QuadratureSpec& quad) {
  if (a == 0.0) return graded_rule(b, quad.radial_panels, quad.radial_ratio, quad.radial_order);
  return gauss_legendre(quad.shell_order, a, b);
}

double shell_integral(const FieldEvaluator& member, int n, double a, double b,
                      const SphereRule& sphere, const QuadratureSpec& quad) {
  const QuadratureRule radial = shell_rule(a, b, quad);
  double total = 0.0;
  for (std::size_t q = 0; q < radial.size(); ++q) {
    const double rho = radial.nodes[q];
    total += radial.weights[q] * rho * sphere_gradient_integral(member, n, rho, sphere);
  }
  return total;
}

}  // namespace

double dot(const Point& a, const Point& b, int n) {
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(i)];
  return s;
}

double norm(const Point& a, int n) { return std::sqrt(dot(a, a, n)); }

QuadratureSpec QuadratureSpec::refined() const {
  QuadratureSpec q = *this;
  q.radial_panels *= 2;
  q.radial_order *= 2;
  q.shell_order *= 2;
  q.polar_order *= 2;
  q.inner_order *= 2;
  q.azimuth_points *= 2;
  return q;
}

SphereRule make_sphere_rule(int n, const QuadratureHint& hint, const QuadratureSpec& spec) {
  check_dimension(n);
  const Point axis = norm(hint.axis, n) > 0.0 ? normalized(hint.axis, n) : unit_axis(n);
  for (double b : hint.breaks) require(b > 0.0 && b < kPi, "quadrature breaks must lie in (0, pi)");
  const auto basis = complement_basis(axis, n);

  const AngleRule polar = colatitude_rule(n - 2, hint.breaks, spec.polar_order);
  std::vector<std::vector<double>> sub;
  std::vector<double> sub_weights;
  const int azimuth = n == 3 ? spec.azimuth_points : 2 * spec.inner_order;
  unit_sphere_rule(n - 2, spec.inner_order, azimuth, sub, sub_weights);

  SphereRule rule;
  rule.nodes.reserve(polar.angle.size() * sub.size());
  rule.weights.reserve(polar.angle.size() * sub.size());
  for (std::size_t a = 0; a < polar.angle.size(); ++a) {
    const double c = std::cos(polar.angle[a]), s = std::sin(polar.angle[a]);
    for (std::size_t b = 0; b < sub.size(); ++b) {
      Point x = scaled(axis, c);
      for (std::size_t i = 0; i < sub[b].size(); ++i) x = axpy(s * sub[b][i], basis[i], x);
      rule.nodes.push_back(x);
      rule.weights.push_back(polar.weight[a] * sub_weights[b]);
    }
  }
  return rule;
}

AcfPair make_open_book(int n, const Point& nu, double c_plus, double c_minus) {
  check_dimension(n);
  require(std::abs(norm(nu, n) - 1.0) <= 1e-12, "open-book normal must be a unit vector");
  require(c_plus > 0.0 && c_minus > 0.0, "open-book slopes must be positive");
  AcfPair pair;
  pair.n = n;
  pair.tag = "open-book";
  pair.hint = {nu, {kPi / 2.0}};
  pair.alpha_plus = pair.alpha_minus = 1.0;
  pair.u_plus = [n, nu, c_plus](const Point& x) {
    FieldSample s;
    const double t = dot(x, nu, n);
    if (t > 0.0) {
      s.value = c_plus * t;
      s.gradient = scaled(nu, c_plus);
    }
    return s;
  };
  pair.u_minus = [n, nu, c_minus](const Point& x) {
    FieldSample s;
    const double t = dot(x, nu, n);
    if (t < 0.0) {
      s.value = -c_minus * t;
      s.gradient = scaled(nu, -c_minus);
    }
    return s;
  };
  return pair;
}

AcfPair make_cap_cone_pair(int n, double theta0) {
  const EigenResult plus = solve_cap_eigen_weighted(CapSpec(n, theta0));
  const EigenResult minus = solve_cap_eigen_weighted(CapSpec(n, kPi - theta0));
  return make_cap_cone_pair(n, theta0, plus, minus);
}

AcfPair make_cap_cone_pair(int n, double theta0, const EigenResult& plus,
                           const EigenResult& minus) {
  check_dimension(n);
  require(theta0 > 0.0 && theta0 < kPi, "cap colatitude must lie in (0, pi)");
  const Point p = unit_axis(n);
  AcfPair pair;
  pair.n = n;
  pair.tag = "cap-cone";
  pair.hint = {p, {theta0}};
  pair.alpha_plus = alpha_from_lambda(n, plus.lambda).alpha;
  pair.alpha_minus = alpha_from_lambda(n, minus.lambda).alpha;
  pair.u_plus = cone_member(n, p, pair.alpha_plus, std::make_shared<CapEigenfunction>(plus));
  pair.u_minus = cone_member(n, scaled(p, -1.0), pair.alpha_minus,
                             std::make_shared<CapEigenfunction>(minus));
  return pair;
}

AcfPair scale_pair(const AcfPair& pair, double c_plus, double c_minus) {
  require(c_plus > 0.0 && c_minus > 0.0, "pair scale factors must be positive");
  AcfPair out = pair;
  auto scale = [](FieldEvaluator f, double c) -> FieldEvaluator {
    return [f = std::move(f), c](const Point& x) {
      FieldSample s = f(x);
      s.value *= c;
      s.gradient = scaled(s.gradient, c);
      return s;
    };
  };
  out.u_plus = scale(pair.u_plus, c_plus);
  out.u_minus = scale(pair.u_minus, c_minus);
  out.tag = pair.tag + "-scaled";
  return out;
}

AcfPair dilate_pair(const AcfPair& pair, double R) {
  require(R > 0.0 && R <= 1.0, "dilation factor must lie in (0, 1]");
  AcfPair out = pair;
  auto dilate = [](FieldEvaluator f, double R) -> FieldEvaluator {
    return [f = std::move(f), R](const Point& x) {
      FieldSample s = f(scaled(x, R));
      s.value /= R;
      return s;
    };
  };
  out.u_plus = dilate(pair.u_plus, R);
  out.u_minus = dilate(pair.u_minus, R);
  out.tag = pair.tag + "-dilated";
  return out;
}

AcfPair with_zero_minus(const AcfPair& pair) {
  AcfPair out = pair;
  out.u_minus = zero_field();
  out.alpha_minus = 0.0;
  out.tag = pair.tag + "-one-sided";
  return out;
}

AcfPair make_gridded_pair(const AcfPair& source, std::size_t n_r, std::size_t n_theta,
                          std::size_t n_phi) {
  require(source.n == 3, "gridded pairs are implemented for n = 3 only");
  require(n_r >= 4 && n_theta >= 4 && n_phi >= 4 && n_phi % 2 == 0,
          "gridded pair needs n_r, n_theta >= 4 and an even n_phi >= 4");
  const Point axis = norm(source.hint.axis, 3) > 0.0 ? normalized(source.hint.axis, 3)
                                                      : unit_axis(3);
  auto plus = std::make_shared<const GriddedField>(source.u_plus, axis, n_r, n_theta, n_phi);
  auto minus = std::make_shared<const GriddedField>(source.u_minus, axis, n_r, n_theta, n_phi);
  AcfPair out = source;
  out.tag = source.tag + "-gridded";
  out.u_plus = [plus](const Point& x) { return (*plus)(x); };
  out.u_minus = [minus](const Point& x) { return (*minus)(x); };
  return out;
}

double sphere_gradient_integral(const FieldEvaluator& member, int n, double rho,
                                const SphereRule& rule) {
  double total = 0.0;
  for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
    const FieldSample s = member(scaled(rule.nodes[q], rho));
    const double g = squared_gradient(s, n);
    if (!std::isfinite(g)) {
      throw SolverError("non-finite gradient at radius " + std::to_string(rho));
    }
    total += rule.weights[q] * g;
  }
  return total;
}

double compute_I(const FieldEvaluator& member, int n, double r, const QuadratureSpec& quad,
                 const QuadratureHint& hint) {
  check_dimension(n);
  require(r > 0.0 && r <= 1.0, "radius must lie in (0, 1]");
  const SphereRule sphere = make_sphere_rule(n, hint, quad);
  const QuadratureRule radial = shell_rule(0.0, r, quad);
  std::vector<double> parts(radial.size());
  parallel_for(radial.size(), [&](std::size_t q) {
    const double rho = radial.nodes[q];
    parts[q] = radial.weights[q] * rho * sphere_gradient_integral(member, n, rho, sphere);
  });
  double total = 0.0;
  for (double p : parts) total += p;
  return total;
}

std::vector<double> uniform_radii(std::size_t count) {
  require(count >= 1, "radius grid needs at least one radius");
  std::vector<double> radii(count);
  for (std::size_t i = 0; i < count; ++i) {
    radii[i] = static_cast<double>(i + 1) / static_cast<double>(count);
  }
  return radii;
}

JCurve compute_J(const AcfPair& pair, std::span<const double> radii, const QuadratureSpec& quad) {
  check_dimension(pair.n);
  require(!radii.empty(), "J needs at least one radius");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    require(radii[i] > 0.0 && radii[i] <= 1.0, "radii must lie in (0, 1]");
    if (i > 0) require(radii[i] > radii[i - 1], "radii must increase");
  }
  const SphereRule sphere = make_sphere_rule(pair.n, pair.hint, quad);
  const std::size_t shells = radii.size();
  std::vector<double> plus(shells), minus(shells);
  parallel_for(2 * shells, [&](std::size_t task) {
    const std::size_t i = task % shells;
    const double a = i == 0 ? 0.0 : radii[i - 1];
    if (task < shells) {
      plus[i] = shell_integral(pair.u_plus, pair.n, a, radii[i], sphere, quad);
    } else {
      minus[i] = shell_integral(pair.u_minus, pair.n, a, radii[i], sphere, quad);
    }
  });

  JCurve curve;
  curve.pair_tag = pair.tag;
  curve.n = pair.n;
  curve.radii.assign(radii.begin(), radii.end());
  double ip = 0.0, im = 0.0;
  for (std::size_t i = 0; i < shells; ++i) {
    ip += plus[i];
    im += minus[i];
    const double r2 = radii[i] * radii[i];
    curve.I_plus.push_back(ip);
    curve.I_minus.push_back(im);
    curve.J.push_back(ip * im / (r2 * r2));
  }
  return curve;
}

std::string to_string(MonotonicityClass c) {
  switch (c) {
    case MonotonicityClass::StrictlyIncreasing: return "StrictlyIncreasing";
    case MonotonicityClass::Constant: return "Constant";
    case MonotonicityClass::NonDecreasing: return "NonDecreasing";
    case MonotonicityClass::Violation: return "Violation";
  }
  return "Unknown";
}

MonotonicityReport verify_monotonicity(const JCurve& curve, double tol) {
  require(tol >= 0.0, "monotonicity tolerance must be nonnegative");
  MonotonicityReport report;
  report.tolerance = tol;
  for (double j : curve.J) report.scale = std::max(report.scale, std::abs(j));
  const double threshold = tol * report.scale;
  bool all_rising = true, all_flat = true;
  for (std::size_t i = 1; i < curve.J.size(); ++i) {
    const double d = curve.J[i] - curve.J[i - 1];
    if (d < -threshold) report.offending.push_back(i);
    if (!(d > threshold)) all_rising = false;
    if (std::abs(d) > threshold) all_flat = false;
  }
  if (!report.offending.empty()) {
    report.classification = MonotonicityClass::Violation;
  } else if (all_flat) {
    report.classification = MonotonicityClass::Constant;
  } else if (all_rising) {
    report.classification = MonotonicityClass::StrictlyIncreasing;
  } else {
    report.classification = MonotonicityClass::NonDecreasing;
  }
  return report;
}

double fit_power_law_exponent(const JCurve& curve) {
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < curve.J.size(); ++i) {
    if (!(curve.J[i] > 0.0)) continue;
    const double x = std::log(curve.radii[i]), y = std::log(curve.J[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++count;
  }
  require(count >= 2, "power-law fit needs two positive samples");
  const double c = static_cast<double>(count);
  return (c * sxy - sx * sy) / (c * sxx - sx * sx);
}

ReductionReport reduction_quotient_check(const AcfPair& pair, const QuadratureSpec& quad) {
  ReductionReport report;
  const SphereRule sphere = make_sphere_rule(pair.n, pair.hint, quad);
  report.I_plus = compute_I(pair.u_plus, pair.n, 1.0, quad, pair.hint);
  report.I_minus = compute_I(pair.u_minus, pair.n, 1.0, quad, pair.hint);
  if (!(report.I_plus > 0.0) || !(report.I_minus > 0.0)) {
    throw InvalidArgument("reduction quotient needs two nonzero members (I(1) = " +
                          std::to_string(report.I_plus) + ", " + std::to_string(report.I_minus) +
                          ")");
  }
  report.dI_plus = sphere_gradient_integral(pair.u_plus, pair.n, 1.0, sphere);
  report.dI_minus = sphere_gradient_integral(pair.u_minus, pair.n, 1.0, sphere);
  report.quotient_plus = report.dI_plus / report.I_plus;
  report.quotient_minus = report.dI_minus / report.I_minus;
  report.excess = report.quotient_plus + report.quotient_minus - 4.0;
  report.bound_plus = 2.0 * pair.alpha_plus;
  report.bound_minus = 2.0 * pair.alpha_minus;
  return report;
}

namespace {

struct FitSamples {
  std::vector<Point> x;
  std::vector<double> w;
  std::vector<double> up;
  std::vector<double> um;
  double scale = 0.0;
};

struct FitValue {
  double residual = 0.0;
  double c_plus = 0.0;
  double c_minus = 0.0;
};

FitValue evaluate_fit(const FitSamples& s, const Point& nu, int n) {
  double ap = 0.0, bp = 0.0, upp = 0.0, am = 0.0, bm = 0.0, umm = 0.0;
  for (std::size_t q = 0; q < s.x.size(); ++q) {
    const double t = dot(s.x[q], nu, n);
    const double gp = std::max(t, 0.0), gm = std::max(-t, 0.0);
    ap += s.w[q] * s.up[q] * gp;
    bp += s.w[q] * gp * gp;
    upp += s.w[q] * s.up[q] * s.up[q];
    am += s.w[q] * s.um[q] * gm;
    bm += s.w[q] * gm * gm;
    umm += s.w[q] * s.um[q] * s.um[q];
  }
  FitValue v;
  v.c_plus = std::max(ap / bp, 0.0);
  v.c_minus = std::max(am / bm, 0.0);
  v.residual = std::max(0.0, upp - v.c_plus * ap) + std::max(0.0, umm - v.c_minus * am);
  return v;
}

std::vector<Point> coarse_directions(int n, const Point& axis) {
  std::vector<Point> dirs = {axis, scaled(axis, -1.0)};
  if (n == 3) {
    const int count = 400;
    const double golden = kPi * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < count; ++i) {
      const double z = 1.0 - (i + 0.5) * 2.0 / count;
      const double rad = std::sqrt(1.0 - z * z);
      dirs.push_back(Point{rad * std::cos(golden * i), rad * std::sin(golden * i), z, 0.0, 0.0});
    }
  } else {
    std::mt19937_64 rng(20240611);
    std::normal_distribution<double> normal;
    for (int i = 0; i < 600; ++i) {
      Point p{};
      for (int k = 0; k < n; ++k) p[static_cast<std::size_t>(k)] = normal(rng);
      dirs.push_back(normalized(p, n));
    }
  }
  return dirs;
}

}  // namespace

OpenBookFit best_open_book_fit(const AcfPair& pair, double rho, const QuadratureSpec& quad) {
  const int n = pair.n;
  check_dimension(n);
  require(rho >= 0.0 && rho <= 0.5, "inner radius must lie in [0, 1/2]");

  const SphereRule sphere = make_sphere_rule(n, pair.hint, quad);
  const QuadratureRule radial = rho == 0.0
                                    ? graded_rule(1.0, quad.radial_panels, quad.radial_ratio,
                                                  quad.radial_order)
                                    : gauss_legendre(2 * quad.shell_order, rho, 1.0);
  FitSamples s;
  const std::size_t total = radial.size() * sphere.nodes.size();
  s.x.resize(total);
  s.w.resize(total);
  s.up.resize(total);
  s.um.resize(total);
  parallel_for(radial.size(), [&](std::size_t a) {
    const double r = radial.nodes[a];
    const double jac = radial.weights[a] * std::pow(r, n - 1);
    for (std::size_t b = 0; b < sphere.nodes.size(); ++b) {
      const std::size_t q = a * sphere.nodes.size() + b;
      s.x[q] = scaled(sphere.nodes[b], r);
      s.w[q] = jac * sphere.weights[b];
      s.up[q] = pair.u_plus(s.x[q]).value;
      s.um[q] = pair.u_minus(s.x[q]).value;
    }
  });
  for (std::size_t q = 0; q < total; ++q) s.scale += s.w[q] * (s.up[q] * s.up[q] + s.um[q] * s.um[q]);

  const Point axis = norm(pair.hint.axis, n) > 0.0 ? normalized(pair.hint.axis, n) : unit_axis(n);
  Point best = axis;
  double best_value = std::numeric_limits<double>::infinity();
  for (const Point& d : coarse_directions(n, axis)) {
    const double v = evaluate_fit(s, d, n).residual;
    if (v < best_value) {
      best_value = v;
      best = d;
    }
  }

  // Nelder-Mead on t in R^{n-1}, nu(t) = normalize(best + sum t_i b_i).
  const auto basis = complement_basis(best, n);
  const std::size_t dim = basis.size();
  auto direction = [&](const std::vector<double>& t) {
    Point p = best;
    for (std::size_t i = 0; i < dim; ++i) p = axpy(t[i], basis[i], p);
    return normalized(p, n);
  };
  auto f = [&](const std::vector<double>& t) { return evaluate_fit(s, direction(t), n).residual; };

  std::vector<std::vector<double>> simplex(dim + 1, std::vector<double>(dim, 0.0));
  for (std::size_t i = 0; i < dim; ++i) simplex[i + 1][i] = 0.05;
  std::vector<double> values(dim + 1);
  for (std::size_t i = 0; i <= dim; ++i) values[i] = f(simplex[i]);

  const int max_iterations = 4000;
  int iteration = 0;
  bool converged = false;
  for (; iteration < max_iterations; ++iteration) {
    std::vector<std::size_t> order(dim + 1);
    for (std::size_t i = 0; i <= dim; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<std::vector<double>> sorted_simplex;
    std::vector<double> sorted_values;
    for (std::size_t i : order) {
      sorted_simplex.push_back(simplex[i]);
      sorted_values.push_back(values[i]);
    }
    simplex = std::move(sorted_simplex);
    values = std::move(sorted_values);

    double size = 0.0;
    for (std::size_t i = 1; i <= dim; ++i) {
      for (std::size_t k = 0; k < dim; ++k) size = std::max(size, std::abs(simplex[i][k] - simplex[0][k]));
    }
    const double spread = values[dim] - values[0];
    if (size < 1e-10 || (size < 1e-6 && spread <= 1e-15 * std::max(s.scale, 1e-300))) {
      converged = true;
      break;
    }

    std::vector<double> centroid(dim, 0.0);
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t k = 0; k < dim; ++k) centroid[k] += simplex[i][k] / static_cast<double>(dim);
    }
    auto along = [&](double coef) {
      std::vector<double> p(dim);
      for (std::size_t k = 0; k < dim; ++k) p[k] = centroid[k] + coef * (simplex[dim][k] - centroid[k]);
      return p;
    };
    const auto reflected = along(-1.0);
    const double fr = f(reflected);
    if (fr < values[0]) {
      const auto expanded = along(-2.0);
      const double fe = f(expanded);
      if (fe < fr) {
        simplex[dim] = expanded;
        values[dim] = fe;
      } else {
        simplex[dim] = reflected;
        values[dim] = fr;
      }
    } else if (fr < values[dim - 1]) {
      simplex[dim] = reflected;
      values[dim] = fr;
    } else {
      const bool outside = fr < values[dim];
      const auto contracted = along(outside ? -0.5 : 0.5);
      const double fc = f(contracted);
      if (fc < (outside ? fr : values[dim])) {
        simplex[dim] = contracted;
        values[dim] = fc;
      } else {
        for (std::size_t i = 1; i <= dim; ++i) {
          for (std::size_t k = 0; k < dim; ++k) simplex[i][k] = simplex[0][k] + 0.5 * (simplex[i][k] - simplex[0][k]);
          values[i] = f(simplex[i]);
        }
      }
    }
  }
  if (!converged) {
    throw SolverError("open-book fit: axis refinement did not converge in " +
                      std::to_string(max_iterations) + " iterations");
  }

  OpenBookFit fit;
  std::size_t best_vertex = 0;
  for (std::size_t i = 1; i <= dim; ++i) {
    if (values[i] < values[best_vertex]) best_vertex = i;
  }
  fit.nu = direction(simplex[best_vertex]);
  const FitValue v = evaluate_fit(s, fit.nu, n);
  fit.c_plus = v.c_plus;
  fit.c_minus = v.c_minus;
  fit.residual = v.residual;
  fit.iterations = iteration;

  const double inner = rho == 0.0 ? 1e-3 : rho;
  const std::vector<double> radii = {inner, 1.0};
  const JCurve curve = compute_J(pair, radii, quad);
  if (curve.J[0] > 0.0 && curve.J[1] > 0.0) {
    fit.log_ratio = std::log(curve.J[1] / curve.J[0]);
  } else {
    fit.log_ratio = std::numeric_limits<double>::quiet_NaN();
  }
  return fit;
}

LemmaIdentityReport homogeneous_extension_identity(int n, double theta0,
                                                   const QuadratureSpec& quad) {
  check_dimension(n);
  const EigenResult eigen = solve_cap_eigen_weighted(CapSpec(n, theta0));
  const EigenResult other = solve_cap_eigen_weighted(CapSpec(n, kPi - theta0));
  const AcfPair pair = make_cap_cone_pair(n, theta0, eigen, other);
  const CapEigenfunction profile(eigen);

  LemmaIdentityReport report;
  report.alpha = pair.alpha_plus;
  report.ball_integral = compute_I(pair.u_plus, n, 1.0, quad, pair.hint);

  // The profile is a piecewise cubic on the solver grid; integrate it with
  // Gauss panels aligned to that grid.
  const std::size_t m = eigen.grid.m;
  const double h = eigen.grid.spacing();
  std::vector<double> breaks(m + 1);
  for (std::size_t k = 0; k <= m; ++k) breaks[k] = std::min(theta0, (k + 0.5) * h);
  breaks.front() = 0.0;
  breaks.back() = theta0;
  const QuadratureRule rule = composite_gauss_legendre(breaks, 4);
  double angular = 0.0;
  const double a2 = report.alpha * report.alpha;
  for (std::size_t q = 0; q < rule.size(); ++q) {
    const double t = rule.nodes[q];
    const double u = profile.value(t), du = profile.derivative(t);
    angular += rule.weights[q] * (a2 * u * u + du * du) * std::pow(std::sin(t), n - 2);
  }
  report.sphere_integral = unit_sphere_measure(n - 2) * angular;
  report.predicted = report.sphere_integral / (2.0 * report.alpha);
  report.relative_error =
      std::abs(report.ball_integral - report.predicted) / std::abs(report.predicted);
  return report;
}

void write_csv(const JCurve& curve, std::ostream& out) {
  out << "r,I_plus,I_minus,J\n";
  char buffer[128];
  for (std::size_t i = 0; i < curve.radii.size(); ++i) {
    std::string line;
    for (double x : {curve.radii[i], curve.I_plus[i], curve.I_minus[i], curve.J[i]}) {
      if (!line.empty()) line += ',';
      const auto res = std::to_chars(buffer, buffer + sizeof(buffer), x);
      line.append(buffer, res.ptr);
    }
    out << line << '\n';
  }
}

void write_json(const JCurve& curve, const MonotonicityReport& report, std::ostream& out) {
  nlohmann::json doc;
  doc["pair_tag"] = curve.pair_tag;
  doc["n"] = curve.n;
  doc["radii"] = curve.radii;
  doc["I_plus"] = curve.I_plus;
  doc["I_minus"] = curve.I_minus;
  doc["J"] = curve.J;
  doc["classification"] = to_string(report.classification);
  out << doc.dump(2) << '\n';
}

}  // namespace acflab
