#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <ostream>
#include <random>
#include <regex>
#include <sstream>
#include <string>

#include "acflab/acf_functional.hpp"
#include "acflab/cap_spectrum.hpp"
#include "acflab/char_constants.hpp"
#include "acflab/convexity_lab.hpp"
#include "acflab/error.hpp"
#include "acflab/sphere_rearrangement.hpp"
#include "acflab/verification.hpp"
#include "acflab/version.hpp"
#include "output.hpp"
#include "svg.hpp"

namespace acflab::cli {

namespace fs = std::filesystem;
using std::numbers::pi;

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    parts.push_back(trim(text.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

int parse_int(const std::string& token) {
  int value = 0;
  const auto res = std::from_chars(token.data(), token.data() + token.size(), value);
  if (token.empty() || res.ec != std::errc() || res.ptr != token.data() + token.size()) {
    throw InvalidArgument("'" + token + "' is not an integer");
  }
  return value;
}

double parse_double(const std::string& token) {
  double value = 0.0;
  const auto res = std::from_chars(token.data(), token.data() + token.size(), value);
  if (token.empty() || res.ec != std::errc() || res.ptr != token.data() + token.size()) {
    throw InvalidArgument("'" + token + "' is not a number");
  }
  return value;
}

double parse_real(const std::string& token) {
  static const std::regex multiple(R"(^([0-9]*\.?[0-9]*)\*?pi(?:/([0-9]*\.?[0-9]+))?$)");
  std::smatch m;
  if (std::regex_match(token, m, multiple)) {
    const double factor = m[1].length() > 0 ? parse_double(m[1].str()) : 1.0;
    const double divisor = m[2].matched ? parse_double(m[2].str()) : 1.0;
    if (divisor == 0.0) throw InvalidArgument("division by zero in '" + token + "'");
    return factor * pi / divisor;
  }
  return parse_double(token);
}

// --- shared option plumbing ----------------------------------------------

struct Common {
  std::string output_dir = ".";
  std::string format = "csv";
  std::uint64_t seed = 0;
  bool plots = true;
};

Format to_format(const std::string& s) {
  if (s == "csv") return Format::Csv;
  if (s == "json") return Format::Json;
  if (s == "both") return Format::Both;
  throw InvalidArgument("format must be csv, json or both");
}

std::vector<std::pair<std::string, std::string>> echo_config(const CLI::App& sub, const Common& common) {
  std::vector<std::pair<std::string, std::string>> config;
  for (const CLI::Option* opt : sub.get_options()) {
    const std::string name = opt->get_single_name();
    if (name == "help") continue;
    std::string value;
    if (opt->count() > 0) {
      for (const std::string& r : opt->results()) value += (value.empty() ? "" : ",") + r;
      if (opt->get_type_size() == 0) value = "true";
    } else {
      value = opt->get_default_str();
      if (opt->get_type_size() == 0) value = "false";
    }
    config.emplace_back(name, value);
  }
  config.emplace_back("format", common.format);
  std::sort(config.begin(), config.end());
  return config;
}

std::string svg_with_header(const Header& header, const Chart& chart) {
  std::string block = header_block(header);
  std::string safe;
  for (std::size_t i = 0; i < block.size(); ++i) {
    safe += block[i];
    if (block[i] == '-' && i + 1 < block.size() && block[i + 1] == '-') safe += ' ';
  }
  return "<!--\n" + safe + "-->\n" + render_svg(chart);
}

void emit_plot(Emitter& emitter, const Common& common, const std::string& name, const Chart& chart) {
  if (!common.plots) return;
  emitter.emit_text(name + ".svg", svg_with_header(emitter.header(), chart), false);
}

void report_files(std::ostream& out, const Emitter& emitter) {
  for (const fs::path& p : emitter.written()) out << "wrote " << p.string() << '\n';
}

std::string theta_label(double t) { return "theta0=" + format_short(t); }

// --- commands --------------------------------------------------------------

struct CapEigenArgs {
  std::string n = "3";
  std::string theta0 = "pi/2";
  std::size_t m = 0;
  std::string method = "all";
  double tol = kDefaultShootingTolerance;
  double lambda_max = 0.0;
  bool raw = false;
};

int cmd_cap_eigen(const CapEigenArgs& a, const Common& common, Emitter& emitter, std::ostream& out) {
  const std::vector<int> ns = parse_int_range(a.n);
  const std::vector<double> thetas = parse_real_list(a.theta0);
  std::vector<Formulation> methods;
  if (a.method == "all" || a.method == "weighted") methods.push_back(Formulation::Weighted);
  if (a.method == "all" || a.method == "schroedinger") methods.push_back(Formulation::Schroedinger);
  if (a.method == "all" || a.method == "shooting") methods.push_back(Formulation::Shooting);
  if (methods.empty()) throw InvalidArgument("method must be weighted, schroedinger, shooting or all");
  const Extrapolation extrapolation = a.raw ? Extrapolation::None : Extrapolation::Richardson;

  emitter.set_anchor("first Dirichlet eigenvalue of the cap; lambda(pi/2) = n - 1",
                     "error_estimate column (Richardson |l_2m - l_m|/3, shooting bracket <= " +
                         format_short(a.tol) + ")");
  Table table{{"n", "theta0", "method", "m", "lambda", "error_estimate"}, {}};
  Chart chart{"Cap eigenvalues", "theta0", "lambda", {}};
  Chart profiles{"Cap eigenfunctions (pole value 1)", "theta", "u(theta)", {}};
  for (int n : ns) {
    std::map<Formulation, Series> curves;
    for (double theta0 : thetas) {
      const CapSpec cap(n, theta0);
      for (Formulation f : methods) {
        EigenResult r;
        switch (f) {
          case Formulation::Weighted:
            r = solve_cap_eigen_weighted(cap, a.m ? a.m : kDefaultWeightedGrid, extrapolation);
            break;
          case Formulation::Schroedinger:
            r = solve_cap_eigen_schroedinger(cap, a.m ? a.m : kDefaultSchroedingerGrid, extrapolation);
            break;
          case Formulation::Shooting:
            r = solve_cap_eigen_shooting(cap, a.tol, ShootingOptions{.lambda_max = a.lambda_max});
            break;
        }
        table.rows.push_back({static_cast<long long>(n), theta0, std::string(to_string(f)),
                              static_cast<long long>(r.grid.m), r.lambda, r.error_estimate});
        Series& s = curves[f];
        s.label = "n=" + std::to_string(n) + " " + std::string(to_string(f));
        s.x.push_back(theta0);
        s.y.push_back(r.lambda);
        if (f == Formulation::Weighted && thetas.size() == 1) {
          const CapEigenfunction u(r);
          Series p{"n=" + std::to_string(n) + " " + theta_label(theta0), {}, {}};
          for (int k = 0; k <= 200; ++k) {
            const double t = theta0 * k / 200.0;
            p.x.push_back(t);
            p.y.push_back(u.value(t));
          }
          profiles.series.push_back(std::move(p));
        }
      }
    }
    for (auto& [f, s] : curves) chart.series.push_back(std::move(s));
  }
  print_table(out, table);
  emitter.emit("cap_eigen", table);
  if (thetas.size() > 1) {
    emit_plot(emitter, common, "cap_eigen", chart);
  } else if (!profiles.series.empty()) {
    emit_plot(emitter, common, "cap_eigen", profiles);
  }
  report_files(out, emitter);
  return kExitOk;
}

struct CharConstArgs {
  std::string n = "3..10";
  std::string theta0 = "pi/6,pi/4,pi/3,pi/2,2pi/3,3pi/4,5pi/6";
};

int cmd_char_const(const CharConstArgs& a, const Common& common, Emitter& emitter, std::ostream& out) {
  const std::vector<int> ns = parse_int_range(a.n);
  const std::vector<double> thetas = parse_real_list(a.theta0);
  emitter.set_anchor("alpha^2 + (n-2) alpha = lambda; t lambda = alpha^2",
                     "quadratic and t residuals <= 1e-12 relative; dimension steps 1e-6");
  Table table{{"n", "theta0", "lambda", "alpha", "quadratic_residual", "optimal_t", "t_residual",
               "step_from_previous_n"},
              {}};
  Chart chart{"Characteristic constants", "n", "alpha(theta0, n)", {}};
  std::vector<std::string> increasing_at;
  for (double theta0 : thetas) {
    Series s{theta_label(theta0), {}, {}};
    double previous = std::numeric_limits<double>::quiet_NaN();
    bool holds = true;
    for (int n : ns) {
      const CharConstant c = alpha_of_cap(CapSpec(n, theta0));
      const double t = optimal_t(n, c.lambda);
      const double step = c.alpha - previous;
      if (std::isfinite(step) && step > 1e-6) holds = false;
      table.rows.push_back({static_cast<long long>(n), theta0, c.lambda, c.alpha, c.quadratic_residual(), t,
                            optimal_t_residual(n, c.lambda, t), step});
      s.x.push_back(n);
      s.y.push_back(c.alpha);
      previous = c.alpha;
    }
    if (!holds) increasing_at.push_back(format_short(theta0));
    chart.series.push_back(std::move(s));
  }
  print_table(out, table);
  if (increasing_at.empty()) {
    out << "alpha is non-increasing in n at every theta0\n";
  } else {
    std::string list;
    for (const auto& t : increasing_at) list += (list.empty() ? "" : ", ") + t;
    out << "alpha increases with n at theta0 = " << list << '\n';
  }
  emitter.emit("char_const", table);
  emit_plot(emitter, common, "char_const", chart);
  report_files(out, emitter);
  return kExitOk;
}

struct FhScanArgs {
  std::string n = "3..10";
  std::size_t grid = 256;
};

int cmd_fh_scan(const FhScanArgs& a, const Common& common, Emitter& emitter, std::ostream& out) {
  const std::vector<int> ns = parse_int_range(a.n);
  emitter.set_anchor("alpha(theta0, n) + alpha(pi - theta0, n) >= 2", "beta_n >= 2 - 1e-5");
  Table summary{{"n", "theta_n", "beta_n", "near_minimizers", "refined", "status"}, {}};
  Table samples{{"n", "theta0", "sum"}, {}};
  Chart chart{"Complementary cap sums", "theta0", "alpha(theta0) + alpha(pi - theta0)", {}};
  bool ok = true;
  for (int n : ns) {
    const FhScanResult r = fh_scan(n, a.grid);
    const bool pass = r.beta_n >= 2.0 - 1e-5;
    ok = ok && pass;
    summary.rows.push_back({static_cast<long long>(n), r.theta_n, r.beta_n,
                            static_cast<long long>(r.near_minimizers.size()),
                            std::string(r.refined ? "yes" : "no"), std::string(pass ? "PASS" : "FAIL")});
    Series s{"n=" + std::to_string(n), {}, {}};
    for (const FhSample& sample : r.samples) {
      samples.rows.push_back({static_cast<long long>(n), sample.theta0, sample.sum});
      s.x.push_back(sample.theta0);
      s.y.push_back(sample.sum);
    }
    chart.series.push_back(std::move(s));
  }
  print_table(out, summary);
  emitter.emit("fh_scan", summary);
  emitter.emit("fh_samples", samples);
  emit_plot(emitter, common, "fh_scan", chart);
  report_files(out, emitter);
  return ok ? kExitOk : kExitCheckFailed;
}

struct ConvexityArgs {
  std::string potential = "schroedinger";
  std::string n = "5";
  double c = 0.0;
  std::string theta_min = "0.15";
  std::string theta_max = "pi-0.15";
  std::size_t points = 64;
  std::size_t m = kDefaultBvpGrid;
};

double parse_bound(const std::string& text) {
  // "pi-0.15" style upper bounds.
  const auto minus = text.rfind('-');
  if (minus != std::string::npos && minus > 0) {
    return parse_real(trim(text.substr(0, minus))) - parse_real(trim(text.substr(minus + 1)));
  }
  return parse_real(trim(text));
}

int cmd_convexity(const ConvexityArgs& a, const Common& common, Emitter& emitter, std::ostream& out) {
  std::vector<PotentialSpec> potentials;
  if (a.potential == "schroedinger") {
    for (int n : parse_int_range(a.n)) potentials.push_back(schrodinger_potential(n));
  } else if (a.potential == "zero") {
    potentials.push_back(constant_potential(0.0));
  } else if (a.potential == "constant") {
    potentials.push_back(constant_potential(a.c));
  } else {
    throw InvalidArgument("potential must be schroedinger, zero or constant");
  }
  const double lo = parse_bound(a.theta_min), hi = parse_bound(a.theta_max);
  if (!(lo > 0.0 && hi < pi && lo < hi)) throw InvalidArgument("need 0 < theta-min < theta-max < pi");
  if (a.points < 3) throw InvalidArgument("points must be at least 3");
  std::vector<double> thetas(a.points);
  for (std::size_t i = 0; i < a.points; ++i) {
    thetas[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(a.points - 1);
  }

  emitter.set_anchor("Lambda(theta0) positive, strictly decreasing, strictly convex for convex V",
                     "second differences > 0 when convexity is asserted");
  Table rows{{"potential", "theta0", "Lambda", "first_difference", "second_difference"}, {}};
  Table summary{{"potential", "positive", "decreasing", "convex", "convexity_asserted",
                 "min_second_difference", "status"},
                {}};
  Chart chart{"Dirichlet eigenvalue against theta0", "theta0", "Lambda", {}};
  bool ok = true;
  for (const PotentialSpec& v : potentials) {
    const ConvexityTable t = convexity_scan(v, thetas, a.m);
    Series s{v.name, {}, {}};
    for (const ConvexityRow& r : t.rows) {
      rows.rows.push_back({v.name, r.theta0, r.Lambda, r.first_difference, r.second_difference});
      s.x.push_back(r.theta0);
      s.y.push_back(r.Lambda);
    }
    chart.series.push_back(std::move(s));
    const auto yes = [](bool b) { return std::string(b ? "yes" : "no"); };
    summary.rows.push_back({v.name, yes(t.positive), yes(t.decreasing), yes(t.convex),
                            yes(t.convexity_asserted), t.min_second_difference,
                            std::string(t.passed() ? "PASS" : "FAIL")});
    ok = ok && t.passed();
  }
  print_table(out, summary);
  emitter.emit("convexity_scan", rows);
  emitter.emit("convexity_summary", summary);
  emit_plot(emitter, common, "convexity_scan", chart);
  report_files(out, emitter);
  return ok ? kExitOk : kExitCheckFailed;
}

struct RearrangeArgs {
  std::string probe = "bump";
  std::size_t n_theta = 128;
  std::size_t n_phi = 256;
  std::optional<double> tilt;
  double theta0 = 1.2;
};

Table grid_table(const SphereGridFunction& f) {
  Table t{{"theta", "phi", "value"}, {}};
  t.rows.reserve(f.values().size());
  for (std::size_t j = 0; j < f.n_theta(); ++j) {
    for (std::size_t k = 0; k < f.n_phi(); ++k) t.rows.push_back({f.theta(j), f.phi(k), f.value(j, k)});
  }
  return t;
}

int cmd_rearrange(const RearrangeArgs& a, const Common& common, Emitter& emitter, std::ostream& out) {
  double tilt = 0.0;
  if (a.tilt) {
    tilt = *a.tilt;
  } else {
    std::mt19937_64 rng(common.seed);
    tilt = std::uniform_real_distribution<double>(0.0, pi)(rng);
  }
  const auto angle = [tilt](double t, double p) {
    const double c = std::cos(t) * std::cos(tilt) + std::sin(t) * std::sin(tilt) * std::cos(p);
    return std::acos(std::clamp(c, -1.0, 1.0));
  };
  std::function<double(double, double)> probe;
  if (a.probe == "halfspace") {
    probe = [angle](double t, double p) { return std::max(std::cos(angle(t, p)), 0.0); };
  } else if (a.probe == "bump") {
    probe = [angle](double t, double p) {
      const double g = angle(t, p);
      return std::exp(-2.0 * g * g) * (1.0 + 0.25 * std::cos(3.0 * p) * std::sin(t));
    };
  } else if (a.probe == "cap") {
    const auto u = std::make_shared<CapEigenfunction>(solve_cap_eigen_weighted(CapSpec(3, a.theta0)));
    probe = [angle, u](double t, double p) { return u->value(angle(t, p)); };
  } else if (a.probe == "band") {
    probe = [](double t, double) { return t > pi / 3 && t < 2 * pi / 3 ? 1.0 : 0.0; };
  } else {
    throw InvalidArgument("probe must be halfspace, bump, cap or band");
  }

  const SphereGridFunction f = SphereGridFunction::sample(a.n_theta, a.n_phi, probe);
  const SphereGridFunction g = symmetric_decreasing_rearrangement(f);
  double gap = 0.0;
  for (int l = 0; l <= 50; ++l) {
    double peak = 0.0;
    for (double v : f.values()) peak = std::max(peak, v);
    const double t = peak * l / 50.0;
    gap = std::max(gap, std::abs(distribution_function(f, t) - distribution_function(g, t)));
  }
  const double slack = f.largest_band_area();
  const double l2f = l2_norm_squared(f), l2g = l2_norm_squared(g);
  const double ef = dirichlet_energy(f), eg = dirichlet_energy(g);
  const bool equimeasurable = gap <= slack + 1e-12;
  const bool norm_ok = std::abs(l2g - l2f) <= 0.005 * l2f;
  const bool energy_ok = eg <= 1.01 * ef;

  emitter.set_anchor("symmetric decreasing rearrangement is equimeasurable and lowers the Dirichlet energy",
                     "distribution gap <= largest band area; L2 0.5%; energy 1% slack");
  const auto status = [](bool b) { return std::string(b ? "PASS" : "FAIL"); };
  Table summary{{"quantity", "input", "rearranged", "bound", "status"}, {}};
  summary.rows.push_back({std::string("tilt"), tilt, tilt, std::string("-"), std::string("-")});
  summary.rows.push_back({std::string("distribution_gap"), gap, gap, slack, status(equimeasurable)});
  summary.rows.push_back({std::string("l2_norm_squared"), l2f, l2g, 0.005 * l2f, status(norm_ok)});
  summary.rows.push_back({std::string("dirichlet_energy"), ef, eg, 1.01 * ef, status(energy_ok)});
  print_table(out, summary);
  emitter.emit("rearrange_summary", summary);
  emitter.emit("rearrange_input", grid_table(f));
  emitter.emit("rearrange_output", grid_table(g));

  Chart chart{"Rearranged profile", "theta", "value", {}};
  Series rearranged{"u# (any longitude)", {}, {}}, meridian{"u on phi = " + format_short(f.phi(0)), {}, {}};
  for (std::size_t j = 0; j < f.n_theta(); ++j) {
    rearranged.x.push_back(g.theta(j));
    rearranged.y.push_back(g.value(j, 0));
    meridian.x.push_back(f.theta(j));
    meridian.y.push_back(f.value(j, 0));
  }
  chart.series = {std::move(rearranged), std::move(meridian)};
  emit_plot(emitter, common, "rearrange", chart);
  report_files(out, emitter);
  return equimeasurable && norm_ok && energy_ok ? kExitOk : kExitCheckFailed;
}

struct AcfArgs {
  std::string pair = "open-book";
  int n = 3;
  std::size_t radii = 16;
  std::string theta0 = "2pi/3";
  double c_plus = 1.0;
  double c_minus = 1.0;
  std::string nu;
  std::optional<double> fit_rho;
  double tol = 1e-6;
};

int cmd_acf_eval(const AcfArgs& a, const Common& common, Emitter& emitter, std::ostream& out) {
  AcfPair pair;
  if (a.pair == "open-book") {
    Point nu{};
    if (a.nu.empty()) {
      nu[0] = 1.0;
    } else {
      const std::vector<double> v = parse_real_list(a.nu);
      if (static_cast<int>(v.size()) != a.n) throw InvalidArgument("nu needs exactly n components");
      double len = 0.0;
      for (double x : v) len += x * x;
      len = std::sqrt(len);
      if (!(len > 0.0)) throw InvalidArgument("nu must be nonzero");
      for (int i = 0; i < a.n; ++i) nu[i] = v[i] / len;
    }
    pair = make_open_book(a.n, nu, a.c_plus, a.c_minus);
  } else if (a.pair == "cap-cone") {
    const std::vector<double> t = parse_real_list(a.theta0);
    if (t.size() != 1) throw InvalidArgument("theta0 takes a single value for cap-cone");
    pair = scale_pair(make_cap_cone_pair(a.n, t[0]), a.c_plus, a.c_minus);
  } else {
    throw InvalidArgument("pair must be open-book or cap-cone");
  }

  const JCurve curve = compute_J(pair, uniform_radii(a.radii), QuadratureSpec{});
  const MonotonicityReport report = verify_monotonicity(curve, a.tol);
  emitter.set_anchor("J(r) = I(r, u+) I(r, u-) / r^4 is non-decreasing",
                     "monotonicity tol " + format_short(a.tol) + " relative to max J");

  Table summary{{"quantity", "value"}, {}};
  summary.rows.push_back({std::string("pair_tag"), curve.pair_tag});
  summary.rows.push_back({std::string("classification"), to_string(report.classification)});
  summary.rows.push_back({std::string("J(1)"), curve.J.back()});
  if (curve.J.front() > 0.0 && curve.radii.size() > 1) {
    summary.rows.push_back({std::string("fitted_exponent"), fit_power_law_exponent(curve)});
  }
  if (pair.alpha_plus > 0.0 && pair.alpha_minus > 0.0) {
    summary.rows.push_back(
        {std::string("predicted_exponent"), 2.0 * (pair.alpha_plus + pair.alpha_minus - 2.0)});
  }
  if (a.fit_rho) {
    const OpenBookFit fit = best_open_book_fit(pair, *a.fit_rho, QuadratureSpec{});
    summary.rows.push_back({std::string("open_book_residual"), fit.residual});
    summary.rows.push_back({std::string("log_J1_over_Jrho"), fit.log_ratio});
    summary.rows.push_back({std::string("fit_c_plus"), fit.c_plus});
    summary.rows.push_back({std::string("fit_c_minus"), fit.c_minus});
  }
  print_table(out, summary);

  if (emitter.wants_csv()) {
    std::ostringstream csv;
    write_csv(curve, csv);
    emitter.emit_text("jcurve.csv", csv.str(), true);
  }
  if (emitter.wants_json()) {
    std::ostringstream json;
    write_json(curve, report, json);
    emitter.emit_json("jcurve", nlohmann::json::parse(json.str()));
  }
  Chart chart{"ACF functional", "r", "J(r)", {{curve.pair_tag, curve.radii, curve.J}}};
  emit_plot(emitter, common, "jcurve", chart);
  report_files(out, emitter);
  return report.classification == MonotonicityClass::Violation ? kExitCheckFailed : kExitOk;
}

struct VerifyArgs {
  std::string only;
};

int cmd_verify_all(const VerifyArgs& a, const Common&, Emitter& emitter, std::ostream& out) {
  std::vector<int> ids;
  if (a.only.empty()) {
    for (const CriterionInfo& c : criteria()) ids.push_back(c.id);
  } else {
    ids = parse_int_range(a.only);
    for (int id : ids) {
      if (id < 1 || id > static_cast<int>(criteria().size())) {
        throw InvalidArgument("criterion id " + std::to_string(id) + " does not exist");
      }
    }
  }
  emitter.set_anchor("acceptance criteria", "per row");
  Table table{{"id", "status", "anchor", "tolerance", "title", "detail"}, {}};
  int failures = 0;
  for (int id : ids) {
    const CriterionResult r = run_criterion(id);
    if (!r.passed) ++failures;
    out << '[' << (r.passed ? "PASS" : "FAIL") << "] " << r.id << "  " << r.title << "  (" << r.anchor
        << "; tol " << r.tolerance << ")  " << r.detail << '\n';
    table.rows.push_back({static_cast<long long>(r.id), std::string(r.passed ? "PASS" : "FAIL"), r.anchor,
                          r.tolerance, r.title, r.detail});
  }
  out << (ids.size() - failures) << " of " << ids.size() << " criteria passed\n";
  emitter.emit("verify", table);
  report_files(out, emitter);
  return failures == 0 ? kExitOk : kExitCheckFailed;
}

}  // namespace

std::vector<int> parse_int_range(std::string_view text) {
  std::vector<int> values;
  for (const std::string& part : split(text, ',')) {
    const auto dots = part.find("..");
    if (dots == std::string::npos) {
      values.push_back(parse_int(part));
      continue;
    }
    const int a = parse_int(trim(part.substr(0, dots))), b = parse_int(trim(part.substr(dots + 2)));
    if (a > b) throw InvalidArgument("range '" + part + "' is empty");
    for (int v = a; v <= b; ++v) values.push_back(v);
  }
  return values;
}

std::vector<double> parse_real_list(std::string_view text) {
  std::vector<double> values;
  for (const std::string& part : split(text, ',')) values.push_back(parse_real(part));
  return values;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"acflab: cap spectra, characteristic constants and the ACF functional", "acflab"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  app.fallthrough();
  app.footer("Exit codes: 0 success, 1 invalid configuration, 2 solver failure, 3 a check failed.");

  Common common;
  app.add_option("--output-dir", common.output_dir, "Directory for artifacts")->capture_default_str();
  app.add_option("--format", common.format, "csv, json or both")
      ->check(CLI::IsMember({"csv", "json", "both"}))
      ->capture_default_str();
  app.add_option("--seed", common.seed, "Seed for randomized probes")->capture_default_str();
  app.add_flag("!--no-plots", common.plots, "Skip SVG charts");

  CapEigenArgs cap;
  CLI::App* cap_cmd = app.add_subcommand("cap-eigen", "First Dirichlet eigenvalue of spherical caps");
  cap_cmd->add_option("--n", cap.n, "Dimension range a..b")->capture_default_str();
  cap_cmd->add_option("--theta0", cap.theta0, "Colatitudes, comma separated")->capture_default_str();
  cap_cmd->add_option("--m", cap.m, "Grid size (0 selects the formulation default)")->capture_default_str();
  cap_cmd->add_option("--method", cap.method, "weighted, schroedinger, shooting or all")
      ->check(CLI::IsMember({"weighted", "schroedinger", "shooting", "all"}))
      ->capture_default_str();
  cap_cmd->add_option("--tol", cap.tol, "Shooting bracket width")->capture_default_str();
  cap_cmd->add_option("--lambda-max", cap.lambda_max, "Shooting bracket top (0 selects the default)")
      ->capture_default_str();
  cap_cmd->add_flag("--no-richardson", cap.raw, "Report the single-grid eigenvalue");

  CharConstArgs chr;
  CLI::App* chr_cmd = app.add_subcommand("char-const", "Characteristic constants and their dimension trend");
  chr_cmd->add_option("--n", chr.n, "Dimension range a..b")->capture_default_str();
  chr_cmd->add_option("--theta0", chr.theta0, "Colatitudes, comma separated")->capture_default_str();

  FhScanArgs fh;
  CLI::App* fh_cmd = app.add_subcommand("fh-scan", "Minimum of alpha(theta0) + alpha(pi - theta0)");
  fh_cmd->add_option("--n", fh.n, "Dimension range a..b")->capture_default_str();
  fh_cmd->add_option("--grid", fh.grid, "Scan points (>= 64)")->capture_default_str();

  ConvexityArgs cvx;
  CLI::App* cvx_cmd = app.add_subcommand("convexity-scan", "Lambda(theta0) with finite differences");
  cvx_cmd->add_option("--potential", cvx.potential, "schroedinger, zero or constant")
      ->check(CLI::IsMember({"schroedinger", "zero", "constant"}))
      ->capture_default_str();
  cvx_cmd->add_option("--n", cvx.n, "Dimension range for the Schroedinger potential")->capture_default_str();
  cvx_cmd->add_option("--c", cvx.c, "Value of the constant potential")->capture_default_str();
  cvx_cmd->add_option("--theta-min", cvx.theta_min, "Smallest colatitude")->capture_default_str();
  cvx_cmd->add_option("--theta-max", cvx.theta_max, "Largest colatitude")->capture_default_str();
  cvx_cmd->add_option("--points", cvx.points, "Number of colatitudes")->capture_default_str();
  cvx_cmd->add_option("--m", cvx.m, "Grid size")->capture_default_str();

  RearrangeArgs rea;
  CLI::App* rea_cmd = app.add_subcommand("rearrange-demo", "Symmetric decreasing rearrangement on S^2");
  rea_cmd->add_option("--probe", rea.probe, "halfspace, bump, cap or band")
      ->check(CLI::IsMember({"halfspace", "bump", "cap", "band"}))
      ->capture_default_str();
  rea_cmd->add_option("--n-theta", rea.n_theta, "Colatitude cells")->capture_default_str();
  rea_cmd->add_option("--n-phi", rea.n_phi, "Longitude cells (even)")->capture_default_str();
  rea_cmd->add_option("--tilt", rea.tilt, "Probe axis colatitude (default drawn from the seed)");
  rea_cmd->add_option("--theta0", rea.theta0, "Cap colatitude for the cap probe")->capture_default_str();

  AcfArgs acf;
  CLI::App* acf_cmd = app.add_subcommand("acf-eval", "J(r) for a pair with disjoint supports");
  acf_cmd->add_option("--pair", acf.pair, "open-book or cap-cone")
      ->check(CLI::IsMember({"open-book", "cap-cone"}))
      ->capture_default_str();
  acf_cmd->add_option("--n", acf.n, "Dimension (3..5)")->capture_default_str();
  acf_cmd->add_option("--radii", acf.radii, "Number of uniform radii in (0, 1]")->capture_default_str();
  acf_cmd->add_option("--theta0", acf.theta0, "Cap colatitude for cap-cone")->capture_default_str();
  acf_cmd->add_option("--c-plus", acf.c_plus, "Slope or scale of u+")->capture_default_str();
  acf_cmd->add_option("--c-minus", acf.c_minus, "Slope or scale of u-")->capture_default_str();
  acf_cmd->add_option("--nu", acf.nu, "Open-book normal, comma separated (default e1)");
  acf_cmd->add_option("--fit-rho", acf.fit_rho, "Also fit the nearest open book on B1 minus B_rho");
  acf_cmd->add_option("--tol", acf.tol, "Monotonicity tolerance")->capture_default_str();

  VerifyArgs ver;
  CLI::App* ver_cmd = app.add_subcommand("verify-all", "Run the acceptance criteria");
  ver_cmd->add_option("--only", ver.only, "Criterion ids, e.g. 1..3,7");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "acflab: error: " << e.what() << '\n';
    return kExitInvalidConfig;
  }

  CLI::App* sub = app.get_subcommands().front();
  try {
    Header header;
    header.command = sub->get_name();
    header.config = echo_config(*sub, common);
    header.seed = common.seed;
    Emitter emitter(common.output_dir, to_format(common.format), header);
    if (sub == cap_cmd) return cmd_cap_eigen(cap, common, emitter, out);
    if (sub == chr_cmd) return cmd_char_const(chr, common, emitter, out);
    if (sub == fh_cmd) return cmd_fh_scan(fh, common, emitter, out);
    if (sub == cvx_cmd) return cmd_convexity(cvx, common, emitter, out);
    if (sub == rea_cmd) return cmd_rearrange(rea, common, emitter, out);
    if (sub == acf_cmd) return cmd_acf_eval(acf, common, emitter, out);
    return cmd_verify_all(ver, common, emitter, out);
  } catch (const InvalidArgument& e) {
    err << "acflab: error: " << e.what() << '\n';
    return kExitInvalidConfig;
  } catch (const SolverError& e) {
    err << "acflab: solver failure: " << e.what() << '\n';
    return kExitSolverFailure;
  }
}

}  // namespace acflab::cli
