#include "acflab/interpolation.hpp"

#include <algorithm>
#include <cmath>

#include "acflab/error.hpp"

namespace acflab {

UniformCubic::UniformCubic(double origin, double spacing, std::vector<double> samples)
    : origin_(origin), spacing_(spacing), samples_(std::move(samples)) {
  require(spacing_ > 0.0, "interpolation spacing must be positive");
  require(samples_.size() >= 4, "cubic interpolation needs at least four samples");
}

void UniformCubic::locate(double x, std::size_t& j, double& t) const {
  const double s = (x - origin_) / spacing_;
  const double last = static_cast<double>(samples_.size() - 3);
  const double cell = std::clamp(std::floor(s), 1.0, last);
  j = static_cast<std::size_t>(cell) - 1;
  t = s - cell;
}

double UniformCubic::value(double x) const {
  std::size_t j;
  double t;
  locate(x, j, t);
  const double* f = samples_.data() + j;
  // Lagrange basis on nodes -1, 0, 1, 2.
  const double l0 = -t * (t - 1.0) * (t - 2.0) / 6.0;
  const double l1 = (t + 1.0) * (t - 1.0) * (t - 2.0) / 2.0;
  const double l2 = -(t + 1.0) * t * (t - 2.0) / 2.0;
  const double l3 = (t + 1.0) * t * (t - 1.0) / 6.0;
  return l0 * f[0] + l1 * f[1] + l2 * f[2] + l3 * f[3];
}

double UniformCubic::derivative(double x) const {
  std::size_t j;
  double t;
  locate(x, j, t);
  const double* f = samples_.data() + j;
  const double d0 = -(3.0 * t * t - 6.0 * t + 2.0) / 6.0;
  const double d1 = (3.0 * t * t - 4.0 * t - 1.0) / 2.0;
  const double d2 = -(3.0 * t * t - 2.0 * t - 2.0) / 2.0;
  const double d3 = (3.0 * t * t - 1.0) / 6.0;
  return (d0 * f[0] + d1 * f[1] + d2 * f[2] + d3 * f[3]) / spacing_;
}

}  // namespace acflab
