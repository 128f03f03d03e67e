#pragma once

#include <vector>

namespace acflab {

/// Piecewise cubic Lagrange interpolation on the uniform nodes
/// x_i = origin + i * spacing, using the four samples around each interval.
/// Values are fourth-order accurate, derivatives third-order. Callers that
/// need boundary behaviour (reflection, vanishing) supply ghost samples.
class UniformCubic {
 public:
  UniformCubic() = default;
  UniformCubic(double origin, double spacing, std::vector<double> samples);

  double value(double x) const;
  double derivative(double x) const;

  double lower() const { return origin_ + spacing_; }
  double upper() const { return origin_ + spacing_ * (samples_.size() - 2); }

 private:
  // Locates the stencil start j (samples j..j+3) and local coordinate t in
  // [0, 1] on the interval [x_{j+1}, x_{j+2}].
  void locate(double x, std::size_t& j, double& t) const;

  double origin_ = 0.0;
  double spacing_ = 1.0;
  std::vector<double> samples_;
};

}  // namespace acflab
