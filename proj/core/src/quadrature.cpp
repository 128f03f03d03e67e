#include "acflab/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "acflab/error.hpp"

namespace acflab {

void QuadratureRule::append(const QuadratureRule& other) {
  nodes.insert(nodes.end(), other.nodes.begin(), other.nodes.end());
  weights.insert(weights.end(), other.weights.begin(), other.weights.end());
}

QuadratureRule gauss_legendre(int order, double a, double b) {
  require(order >= 1, "Gauss-Legendre order must be positive");
  QuadratureRule rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  const int pairs = (order + 1) / 2;
  for (int i = 0; i < pairs; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
    double derivative = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int k = 1; k <= order; ++k) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p2) / k;
      }
      derivative = order * (x * p0 - p1) / (x * x - 1.0);
      const double step = p0 / derivative;
      x -= step;
      if (std::abs(step) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * derivative * derivative);
    rule.nodes[i] = mid - half * x;
    rule.nodes[order - 1 - i] = mid + half * x;
    rule.weights[i] = half * w;
    rule.weights[order - 1 - i] = half * w;
  }
  return rule;
}

QuadratureRule composite_gauss_legendre(std::span<const double> breaks, int order) {
  require(breaks.size() >= 2, "composite rule needs at least one panel");
  QuadratureRule rule;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    require(breaks[i + 1] > breaks[i], "panel breaks must be strictly increasing");
    rule.append(gauss_legendre(order, breaks[i], breaks[i + 1]));
  }
  return rule;
}

QuadratureRule graded_rule(double r, int panels, double ratio, int order) {
  require(r > 0.0, "graded rule needs a positive upper limit");
  require(ratio > 0.0 && ratio < 1.0, "grading ratio must lie in (0, 1)");
  require(panels >= 0, "panel count must be non-negative");
  std::vector<double> breaks;
  breaks.reserve(panels + 2);
  breaks.push_back(0.0);
  for (int k = panels; k >= 0; --k) breaks.push_back(r * std::pow(ratio, k));
  return composite_gauss_legendre(breaks, order);
}

}  // namespace acflab
