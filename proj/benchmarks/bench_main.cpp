#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "acflab/acf_functional.hpp"
#include "acflab/cap_spectrum.hpp"
#include "acflab/char_constants.hpp"
#include "acflab/convexity_lab.hpp"
#include "acflab/sphere_rearrangement.hpp"

using namespace acflab;
using std::numbers::pi;

static void BM_WeightedSolver(benchmark::State& state) {
  const CapSpec cap(5, 2.0);
  const auto m = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_cap_eigen_weighted(cap, m, Extrapolation::None).lambda);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_WeightedSolver)->RangeMultiplier(4)->Range(64, 4096)->Complexity();

static void BM_SchroedingerSolver(benchmark::State& state) {
  const CapSpec cap(3, 1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_cap_eigen_schroedinger(cap, kDefaultSchroedingerGrid).lambda);
  }
}
BENCHMARK(BM_SchroedingerSolver);

static void BM_Shooting(benchmark::State& state) {
  const CapSpec cap(4, 1.3);
  const double tol = std::pow(10.0, -static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(solve_cap_eigen_shooting(cap, tol).lambda);
}
BENCHMARK(BM_Shooting)->Arg(6)->Arg(10)->Unit(benchmark::kMillisecond);

static void BM_FhScan(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(fh_scan(5, 64).beta_n);
}
BENCHMARK(BM_FhScan)->Unit(benchmark::kMillisecond);

static void BM_VdotProfile(benchmark::State& state) {
  const PotentialSpec v = schrodinger_potential(6);
  for (auto _ : state) benchmark::DoNotOptimize(vdot_profile(v, 1.2).theta_bar);
}
BENCHMARK(BM_VdotProfile)->Unit(benchmark::kMillisecond);

static void BM_ComputeJ(benchmark::State& state) {
  const AcfPair pair = make_cap_cone_pair(static_cast<int>(state.range(0)), 2 * pi / 3);
  const std::vector<double> radii = uniform_radii(8);
  for (auto _ : state) benchmark::DoNotOptimize(compute_J(pair, radii, QuadratureSpec{}).J.back());
}
BENCHMARK(BM_ComputeJ)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

static void BM_Rearrangement(benchmark::State& state) {
  const auto n_theta = static_cast<std::size_t>(state.range(0));
  const auto f = SphereGridFunction::sample(n_theta, 2 * n_theta, [](double t, double p) {
    return std::exp(-std::pow(t - 1.0, 2)) * (1.0 + 0.2 * std::cos(p));
  });
  for (auto _ : state) benchmark::DoNotOptimize(symmetric_decreasing_rearrangement(f).values().data());
  state.SetItemsProcessed(state.iterations() * static_cast<long long>(f.values().size()));
}
BENCHMARK(BM_Rearrangement)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
