#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <vector>

namespace acflab {

/// Nonnegative function on the unit sphere S^2 sampled at the cell centres
/// of a colatitude-longitude grid. theta_j = (j + 1/2) pi / n_theta,
/// phi_k = (k + 1/2) 2 pi / n_phi; value index j * n_phi + k. Each weight is
/// the exact area of its cell, so the weights sum to 4 pi.
class SphereGridFunction {
 public:
  SphereGridFunction(std::size_t n_theta, std::size_t n_phi, std::vector<double> values);

  static SphereGridFunction sample(std::size_t n_theta, std::size_t n_phi,
                                   const std::function<double(double, double)>& f);

  std::size_t n_theta() const { return n_theta_; }
  std::size_t n_phi() const { return n_phi_; }
  double theta(std::size_t j) const;
  double phi(std::size_t k) const;
  double value(std::size_t j, std::size_t k) const { return values_[j * n_phi_ + k]; }
  const std::vector<double>& values() const { return values_; }
  double weight(std::size_t j) const { return band_weights_[j]; }
  /// Area of the colatitude band j (all longitudes).
  double band_area(std::size_t j) const { return band_weights_[j] * static_cast<double>(n_phi_); }
  double largest_band_area() const;
  double total_weight() const;

 private:
  std::size_t n_theta_;
  std::size_t n_phi_;
  std::vector<double> values_;
  std::vector<double> band_weights_;
};

/// Total weight of the samples with value > t.
double distribution_function(const SphereGridFunction& f, double t);

/// u*(s) = inf { t >= 0 : mu(t) <= s } for the discrete distribution mu.
double decreasing_rearrangement(const SphereGridFunction& f, double s);

/// u^#: band j takes the value u*(s) at the mid-measure of the polar cap
/// ring it covers, so the result depends on colatitude only and is
/// non-increasing in it.
SphereGridFunction symmetric_decreasing_rearrangement(const SphereGridFunction& f);

/// Measure of the cap of colatitude theta0 in S^{n-1}.
double cap_measure(int n, double theta0);

/// Sum over cells of (f_theta^2 + f_phi^2 / sin^2 theta) * weight with
/// centered differences; the colatitude stencil crosses a pole to longitude
/// phi + pi.
double dirichlet_energy(const SphereGridFunction& f);

/// Sum of value^2 * weight.
double l2_norm_squared(const SphereGridFunction& f);

/// Rows "theta,phi,value" after a header row.
void write_csv(const SphereGridFunction& f, std::ostream& out);

}  // namespace acflab
