#include "acflab/sphere_rearrangement.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <numeric>
#include <ostream>
#include <string>

#include "acflab/error.hpp"
#include "acflab/special_functions.hpp"

namespace acflab {

namespace {

constexpr double kPi = std::numbers::pi;

// Distinct sample values in decreasing order, each with the total weight of
// strictly larger samples. A final entry for the level 0 is always present.
struct LevelTable {
  std::vector<double> level;
  std::vector<double> weight_above;
};

LevelTable build_levels(const SphereGridFunction& f) {
  const std::size_t count = f.values().size();
  std::vector<std::size_t> order(count);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return f.values()[a] > f.values()[b]; });
  LevelTable table;
  double above = 0.0;
  std::size_t i = 0;
  while (i < count) {
    const double level = f.values()[order[i]];
    if (level <= 0.0) break;
    table.level.push_back(level);
    table.weight_above.push_back(above);
    while (i < count && f.values()[order[i]] == level) {
      above += f.weight(order[i] / f.n_phi());
      ++i;
    }
  }
  table.level.push_back(0.0);
  table.weight_above.push_back(above);
  return table;
}

double query(const LevelTable& table, double s) {
  // weight_above is non-decreasing; the answer is the smallest level whose
  // weight_above is <= s, i.e. the last such entry.
  const auto it = std::upper_bound(table.weight_above.begin(), table.weight_above.end(), s);
  const std::size_t index = static_cast<std::size_t>(it - table.weight_above.begin());
  return index == 0 ? table.level.front() : table.level[index - 1];
}

void append_number(std::string& out, double x) {
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), x);
  out.append(buffer, result.ptr);
}

}  // namespace

SphereGridFunction::SphereGridFunction(std::size_t n_theta, std::size_t n_phi,
                                       std::vector<double> values)
    : n_theta_(n_theta), n_phi_(n_phi), values_(std::move(values)) {
  require(n_theta >= 2, "sphere grid needs at least two colatitude bands");
  require(n_phi >= 2 && n_phi % 2 == 0, "sphere grid needs an even longitude count >= 2");
  require(values_.size() == n_theta * n_phi, "sphere grid value count does not match its shape");
  for (double v : values_) {
    require(std::isfinite(v) && v >= 0.0, "sphere grid values must be finite and nonnegative");
  }
  const double dtheta = kPi / static_cast<double>(n_theta);
  const double dphi = 2.0 * kPi / static_cast<double>(n_phi);
  band_weights_.resize(n_theta);
  for (std::size_t j = 0; j < n_theta; ++j) {
    band_weights_[j] = 2.0 * std::sin((j + 0.5) * dtheta) * std::sin(0.5 * dtheta) * dphi;
  }
}

SphereGridFunction SphereGridFunction::sample(std::size_t n_theta, std::size_t n_phi,
                                              const std::function<double(double, double)>& f) {
  std::vector<double> values(n_theta * n_phi);
  const double dtheta = kPi / static_cast<double>(n_theta);
  const double dphi = 2.0 * kPi / static_cast<double>(n_phi);
  for (std::size_t j = 0; j < n_theta; ++j) {
    for (std::size_t k = 0; k < n_phi; ++k) {
      values[j * n_phi + k] = f((j + 0.5) * dtheta, (k + 0.5) * dphi);
    }
  }
  return SphereGridFunction(n_theta, n_phi, std::move(values));
}

double SphereGridFunction::theta(std::size_t j) const {
  return (j + 0.5) * kPi / static_cast<double>(n_theta_);
}

double SphereGridFunction::phi(std::size_t k) const {
  return (k + 0.5) * 2.0 * kPi / static_cast<double>(n_phi_);
}

double SphereGridFunction::largest_band_area() const {
  return *std::max_element(band_weights_.begin(), band_weights_.end()) *
         static_cast<double>(n_phi_);
}

double SphereGridFunction::total_weight() const {
  return std::accumulate(band_weights_.begin(), band_weights_.end(), 0.0) *
         static_cast<double>(n_phi_);
}

double distribution_function(const SphereGridFunction& f, double t) {
  require(t >= 0.0, "distribution level must be nonnegative");
  double total = 0.0;
  for (std::size_t j = 0; j < f.n_theta(); ++j) {
    std::size_t above = 0;
    for (std::size_t k = 0; k < f.n_phi(); ++k) {
      if (f.value(j, k) > t) ++above;
    }
    total += f.weight(j) * static_cast<double>(above);
  }
  return total;
}

double decreasing_rearrangement(const SphereGridFunction& f, double s) {
  require(s >= 0.0 && s <= 4.0 * kPi, "measure value must lie in [0, 4 pi]");
  if (s == 4.0 * kPi) return 0.0;
  return query(build_levels(f), s);
}

SphereGridFunction symmetric_decreasing_rearrangement(const SphereGridFunction& f) {
  const LevelTable table = build_levels(f);
  const double dtheta = kPi / static_cast<double>(f.n_theta());
  std::vector<double> values(f.values().size());
  double previous = 0.0;
  for (std::size_t j = 0; j < f.n_theta(); ++j) {
    const double cap = 2.0 * kPi * (1.0 - std::cos((j + 1.0) * dtheta));
    const double level = query(table, 0.5 * (previous + cap));
    std::fill_n(values.begin() + static_cast<std::ptrdiff_t>(j * f.n_phi()), f.n_phi(), level);
    previous = cap;
  }
  return SphereGridFunction(f.n_theta(), f.n_phi(), std::move(values));
}

double cap_measure(int n, double theta0) {
  require(n >= 3, "cap_measure needs n >= 3");
  require(theta0 > 0.0 && theta0 < kPi, "cap colatitude must lie in (0, pi)");
  return unit_sphere_measure(n - 2) * sine_power_integral(n - 2, theta0);
}

double dirichlet_energy(const SphereGridFunction& f) {
  const std::size_t nt = f.n_theta(), np = f.n_phi();
  const double dtheta = kPi / static_cast<double>(nt);
  const double dphi = 2.0 * kPi / static_cast<double>(np);
  const std::size_t half_turn = np / 2;
  double energy = 0.0;
  for (std::size_t j = 0; j < nt; ++j) {
    const double s = std::sin(f.theta(j));
    double band = 0.0;
    for (std::size_t k = 0; k < np; ++k) {
      const std::size_t opposite = (k + half_turn) % np;
      const double north = j == 0 ? f.value(0, opposite) : f.value(j - 1, k);
      const double south = j + 1 == nt ? f.value(nt - 1, opposite) : f.value(j + 1, k);
      const double east = f.value(j, (k + 1) % np);
      const double west = f.value(j, (k + np - 1) % np);
      const double ft = (south - north) / (2.0 * dtheta);
      const double fp = (east - west) / (2.0 * dphi);
      band += ft * ft + fp * fp / (s * s);
    }
    energy += band * f.weight(j);
  }
  return energy;
}

double l2_norm_squared(const SphereGridFunction& f) {
  double total = 0.0;
  for (std::size_t j = 0; j < f.n_theta(); ++j) {
    double band = 0.0;
    for (std::size_t k = 0; k < f.n_phi(); ++k) band += f.value(j, k) * f.value(j, k);
    total += band * f.weight(j);
  }
  return total;
}

void write_csv(const SphereGridFunction& f, std::ostream& out) {
  std::string text = "theta,phi,value\n";
  for (std::size_t j = 0; j < f.n_theta(); ++j) {
    for (std::size_t k = 0; k < f.n_phi(); ++k) {
      append_number(text, f.theta(j));
      text += ',';
      append_number(text, f.phi(k));
      text += ',';
      append_number(text, f.value(j, k));
      text += '\n';
    }
  }
  out << text;
}

}  // namespace acflab
