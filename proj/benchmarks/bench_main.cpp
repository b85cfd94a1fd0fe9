#include <benchmark/benchmark.h>

#include <cmath>

#include "hhkit/hhkit.hpp"

using namespace hhkit;

namespace {

const WeightFunction kLinear = WeightFunction::polynomial({0.0, 2.0});
const WeightFunction kBump = WeightFunction::polynomial({0.0, 6.0, -6.0});

void BM_TakagiT(benchmark::State& state) {
  const TakagiParams p{static_cast<double>(state.range(0)) / 2.0, 1e-10};
  double t = 0.1234567;
  for (auto _ : state) {
    benchmark::DoNotOptimize(takagi_T(p, t));
    t = std::fmod(t + 0.318309886, 1.0);
  }
}
BENCHMARK(BM_TakagiT)->Arg(1)->Arg(2)->Arg(4);

void BM_TakagiWeightedIntegral(benchmark::State& state) {
  const auto kind = state.range(0) == 0 ? TakagiKind::T : TakagiKind::S;
  QuadratureSpec spec;
  spec.abs_tol = 1e-9;
  for (auto _ : state) benchmark::DoNotOptimize(takagi_weighted_integral(kind, 1.5, kBump, spec).value);
}
BENCHMARK(BM_TakagiWeightedIntegral)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_PsiEvaluate(benchmark::State& state) {
  const PsiKernel psi = build_psi(kLinear, static_cast<int>(state.range(0)));
  double t = 0.2;
  for (auto _ : state) {
    benchmark::DoNotOptimize(psi(t));
    t = std::fmod(t + 0.618033988, 1.0);
  }
}
BENCHMARK(BM_PsiEvaluate)->Arg(10)->Arg(30);

void BM_IteratePhi(benchmark::State& state) {
  const PhiFunction phi = symmetrize_phi(kBump);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(iterate_phi(phi, n).integral());
}
BENCHMARK(BM_IteratePhi)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_UpperHHSeries(benchmark::State& state) {
  const auto alpha = RadialErrorFunction::profile([](double r) { return 0.1 * r * r; }, {true, true});
  for (auto _ : state) benchmark::DoNotOptimize(jensen_to_upper_hh_series(alpha, kLinear, 1.0).alpha_h);
}
BENCHMARK(BM_UpperHHSeries)->Unit(benchmark::kMillisecond);

void BM_CheckUpperHH(benchmark::State& state) {
  const SegmentFunction f = make_power_premise_function(PerturbBase::quadratic, 0.1, 2.0, 3);
  const auto alpha = RadialErrorFunction::power(0.1, 2.0);
  const int grid = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(check_upper_hh(f, kLinear, 2.0 / 3.0, alpha, grid).max_violation);
}
BENCHMARK(BM_CheckUpperHH)->Arg(33)->Arg(65)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
