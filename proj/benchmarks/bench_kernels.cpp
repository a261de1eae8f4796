#include <benchmark/benchmark.h>
#include <cmath>


#include "ilab/energy.hpp"
#include "ilab/ffield.hpp"
#include "ilab/generators.hpp"
#include "ilab/incidence.hpp"
#include "ilab/latticecount.hpp"

using namespace ilab;

static void BM_ExactValtr(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(incidence::exact_valtr_incidences(n, 2).count);
}
BENCHMARK(BM_ExactValtr)->RangeMultiplier(4)->Range(16, 1024);

// annulus counting on the Mattila2 set, t = 1, eps = N^{-1/s}
static void annulus(benchmark::State& state, incidence::Method method) {
  const auto P = pointsets::gen_mattila2(0.48, static_cast<std::uint32_t>(state.range(0)));
  const gauge::Gauge g(gauge::GaugeKind::euclidean, 2);
  const double eps = std::pow(static_cast<double>(P.size()), -1.0 / 1.48);
  for (auto _ : state) benchmark::DoNotOptimize(incidence::annulus_incidences(P, g, 1.0, eps, method).count);
  state.counters["N"] = static_cast<double>(P.size());
}
static void BM_AnnulusGrid(benchmark::State& state) { annulus(state, incidence::Method::grid); }
static void BM_AnnulusBrute(benchmark::State& state) { annulus(state, incidence::Method::brute); }
BENCHMARK(BM_AnnulusGrid)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AnnulusBrute)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

static void BM_ValtrBandParaboloid(benchmark::State& state) {
  const auto P = pointsets::gen_valtr(static_cast<std::uint64_t>(state.range(0)), 2);
  const gauge::Gauge g(gauge::GaugeKind::paraboloid_body, 2);
  for (auto _ : state) benchmark::DoNotOptimize(incidence::annulus_incidences(P, g, 1.0, 0.01).count);
}
BENCHMARK(BM_ValtrBandParaboloid)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

static void BM_AdaptabilitySum(benchmark::State& state) {
  const auto P = pointsets::gen_lenz(static_cast<std::uint64_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(energy::adaptability_sum(P, 1.5).lambda_s);
}
BENCHMARK(BM_AdaptabilitySum)->RangeMultiplier(2)->Range(256, 4096)->Unit(benchmark::kMillisecond);

static void BM_FFFourier(benchmark::State& state) {
  const auto H = ffield::ff_paraboloid(static_cast<std::uint64_t>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(ffield::ff_fourier(H).max_nonzero_mag);
}
BENCHMARK(BM_FFFourier)->Arg(11)->Arg(31)->Arg(61)->Unit(benchmark::kMillisecond);

static void BM_BallCount(benchmark::State& state) {
  const double R = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(lattice::ball_count(2, R).count);
}
BENCHMARK(BM_BallCount)->RangeMultiplier(10)->Range(100, 1000000);

BENCHMARK_MAIN();
