#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "acflab/cap_spectrum.hpp"

namespace acflab {

inline constexpr int kMaxAcfDimension = 5;

/// Point or vector of R^n, n <= 5; entries beyond n are zero.
using Point = std::array<double, kMaxAcfDimension>;

struct FieldSample {
  double value = 0.0;
  Point gradient{};
};

/// Value and gradient of a pair member; must be callable concurrently.
using FieldEvaluator = std::function<FieldSample(const Point&)>;

/// Where the members' gradients may jump: colatitudes (measured from axis)
/// at which the sphere rule places panel boundaries.
struct QuadratureHint {
  Point axis{};
  std::vector<double> breaks;
};

struct AcfPair {
  int n = 3;
  FieldEvaluator u_plus;
  FieldEvaluator u_minus;
  std::string tag;
  QuadratureHint hint;
  /// Homogeneity degrees when both members are homogeneous (cap cones, open
  /// books); 0 when unknown.
  double alpha_plus = 0.0;
  double alpha_minus = 0.0;
};

struct QuadratureSpec {
  int radial_panels = 28;     // graded panels on the innermost shell
  double radial_ratio = 0.5;
  int radial_order = 12;      // Gauss points per graded panel
  int shell_order = 10;       // Gauss points per shell between radii
  int polar_order = 32;       // Gauss points per colatitude panel
  int inner_order = 12;       // Gauss points per inner hyperspherical angle
  int azimuth_points = 64;    // offset uniform longitudes

  /// Every resolution doubled.
  QuadratureSpec refined() const;
};

/// Product rule on S^{n-1} in hyperspherical angles about `axis`; the
/// outermost colatitude uses composite Gauss panels split at hint.breaks.
struct SphereRule {
  std::vector<Point> nodes;
  std::vector<double> weights;
};

SphereRule make_sphere_rule(int n, const QuadratureHint& hint, const QuadratureSpec& spec);

double dot(const Point& a, const Point& b, int n);
double norm(const Point& a, int n);

// --- pair construction ---------------------------------------------------

/// u+ = c+ (x.nu)+, u- = c- (x.nu)-.
AcfPair make_open_book(int n, const Point& nu, double c_plus, double c_minus);

/// u+ = r^alpha(theta0) e(theta) on the cap about p = e_n, u- the same for
/// the complementary cap about -p; e is the cap eigenfunction scaled to 1 at
/// its pole, so the hemisphere pair is the unit open book x_n.
AcfPair make_cap_cone_pair(int n, double theta0);

/// Like make_cap_cone_pair with eigenpairs supplied by the caller.
AcfPair make_cap_cone_pair(int n, double theta0, const EigenResult& plus,
                           const EigenResult& minus);

/// (c+ u+, c- u-).
AcfPair scale_pair(const AcfPair& pair, double c_plus, double c_minus);

/// u_R(x) = u(R x) / R.
AcfPair dilate_pair(const AcfPair& pair, double R);

/// Replaces u- by the zero field.
AcfPair with_zero_minus(const AcfPair& pair);

/// n = 3 members sampled on the product grid r_i = (i+1/2)/n_r,
/// theta_j = (j+1/2) pi/n_theta, phi_k = (k+1/2) 2 pi/n_phi about the hint
/// axis. Gradients come from centered differences with spherical metric
/// factors and are interpolated trilinearly; next to a zero sample the
/// stencils switch to the nonzero side so supports stay sharp.
AcfPair make_gridded_pair(const AcfPair& source, std::size_t n_r, std::size_t n_theta,
                          std::size_t n_phi);

// --- functionals ---------------------------------------------------------

/// I(r) = integral over B_r of |grad u|^2 |x|^{2-n}.
double compute_I(const FieldEvaluator& member, int n, double r, const QuadratureSpec& quad,
                 const QuadratureHint& hint = {});

/// Integral over the unit sphere of |grad u(rho omega)|^2.
double sphere_gradient_integral(const FieldEvaluator& member, int n, double rho,
                                const SphereRule& rule);

struct JCurve {
  std::string pair_tag;
  int n = 3;
  std::vector<double> radii;
  std::vector<double> I_plus;
  std::vector<double> I_minus;
  std::vector<double> J;
};

/// Shell integrals between consecutive radii are evaluated in parallel and
/// summed in radius order.
JCurve compute_J(const AcfPair& pair, std::span<const double> radii, const QuadratureSpec& quad);

/// r_i = i / count, i = 1..count.
std::vector<double> uniform_radii(std::size_t count);

enum class MonotonicityClass { StrictlyIncreasing, Constant, NonDecreasing, Violation };
std::string to_string(MonotonicityClass c);

struct MonotonicityReport {
  MonotonicityClass classification = MonotonicityClass::Constant;
  std::vector<std::size_t> offending;  // i with J[i] - J[i-1] < -tol * scale
  double scale = 0.0;                  // max |J|
  double tolerance = 0.0;
};

/// Consecutive differences d_i against tol * max|J|: all above means
/// StrictlyIncreasing, all within means Constant, any below means
/// Violation, and a mix of flat and rising steps means NonDecreasing.
MonotonicityReport verify_monotonicity(const JCurve& curve, double tol);

/// Least-squares slope of log J against log r.
double fit_power_law_exponent(const JCurve& curve);

struct ReductionReport {
  double I_plus = 0.0;
  double I_minus = 0.0;
  double dI_plus = 0.0;   // I'(1) as the unit-sphere gradient integral
  double dI_minus = 0.0;
  double quotient_plus = 0.0;
  double quotient_minus = 0.0;
  double excess = 0.0;    // quotient_plus + quotient_minus - 4
  /// 2 alpha of the member, when the pair carries homogeneity degrees.
  double bound_plus = 0.0;
  double bound_minus = 0.0;
};

ReductionReport reduction_quotient_check(const AcfPair& pair, const QuadratureSpec& quad);

struct OpenBookFit {
  Point nu{};
  double c_plus = 0.0;
  double c_minus = 0.0;
  double residual = 0.0;
  double log_ratio = 0.0;    // log(J(1) / J(rho)), rho replaced by 1e-3 when 0
  int iterations = 0;
};

/// Minimizes the annulus L2 distance to open books: coarse search over axis
/// directions, Nelder-Mead in the tangent plane, slopes in closed form.
OpenBookFit best_open_book_fit(const AcfPair& pair, double rho, const QuadratureSpec& quad);

struct LemmaIdentityReport {
  double alpha = 0.0;
  double ball_integral = 0.0;    // I(1) of the cone member
  double sphere_integral = 0.0;  // integral over S^{n-1} of alpha^2 u^2 + |grad u|^2
  double predicted = 0.0;        // sphere_integral / (2 alpha)
  double relative_error = 0.0;
};

/// Checks I(1) of r^alpha e(theta) against its angular integral, the latter
/// computed by a one-dimensional rule in theta.
LemmaIdentityReport homogeneous_extension_identity(int n, double theta0,
                                                   const QuadratureSpec& quad);

void write_csv(const JCurve& curve, std::ostream& out);
void write_json(const JCurve& curve, const MonotonicityReport& report, std::ostream& out);

}  // namespace acflab
