#pragma once

#include <span>
#include <vector>

namespace acflab {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }
  void append(const QuadratureRule& other);
};

/// Gauss-Legendre rule with `order` points on [a, b] (Newton iteration on
/// the three-term recurrence, exact for polynomials of degree 2*order-1).
QuadratureRule gauss_legendre(int order, double a = -1.0, double b = 1.0);

/// Composite Gauss-Legendre over consecutive panels [breaks[i], breaks[i+1]].
QuadratureRule composite_gauss_legendre(std::span<const double> breaks, int order);

/// Composite rule on [0, r] whose panels shrink geometrically toward 0:
/// [r q^{k+1}, r q^k] for k < panels, plus a final [0, r q^panels].
/// Integrates r^p-type integrands with algebraic singularities at 0.
QuadratureRule graded_rule(double r, int panels, double ratio, int order);

}  // namespace acflab
