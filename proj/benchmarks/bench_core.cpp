#include <benchmark/benchmark.h>

#include <random>

#include "minkcurves/bifurcation.hpp"
#include "minkcurves/contact.hpp"
#include "minkcurves/surface.hpp"
#include "minkcurves/tracer.hpp"

using namespace minkcurves;

namespace {

Jet2 random_jet(int degree, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1, 1);
  Jet2 j(degree);
  for (int s = 0; s <= degree; ++s)
    for (int i = 0; i <= s; ++i) j.set(s, i, u(rng));
  return j;
}

MongePatch random_patch(int degree, unsigned seed) {
  Jet2 f = random_jet(degree, seed);
  f.set(0, 0, 0.0);
  f.set(1, 0, 0.0);
  f.set(1, 1, 0.0);
  return MongePatch(MongeForm::TimelikeGraph, f);
}

void BM_JetMultiply(benchmark::State& state) {
  const int degree = static_cast<int>(state.range(0));
  const Jet2 a = random_jet(degree, 1), b = random_jet(degree, 2);
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_JetMultiply)->Arg(4)->Arg(8)->Arg(16);

void BM_FeatureFields(benchmark::State& state) {
  const MongePatch p = random_patch(5, 3);
  for (auto _ : state) benchmark::DoNotOptimize(feature_fields(p));
}
BENCHMARK(BM_FeatureFields);

void BM_TraceLpl(benchmark::State& state) {
  const FeatureSet fs = feature_fields(random_patch(4, 4));
  const Rect dom{-0.3, 0.3, -0.3, 0.3};
  const int grid = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(trace(fs[FeatureKind::LPL], dom, grid));
}
BENCHMARK(BM_TraceLpl)->Arg(65)->Arg(129)->Arg(257)->Unit(benchmark::kMillisecond);

void BM_IntersectLplMcnc(benchmark::State& state) {
  const FeatureSet fs = feature_fields(random_patch(4, 5));
  const Rect dom{-0.3, 0.3, -0.3, 0.3};
  for (auto _ : state) benchmark::DoNotOptimize(intersect(fs[FeatureKind::LPL], fs[FeatureKind::MCNC], dom, 129));
}
BENCHMARK(BM_IntersectLplMcnc)->Unit(benchmark::kMillisecond);

void BM_ContactOrder(benchmark::State& state) {
  const FeatureSet fs = feature_fields(random_patch(6, 6));
  Jet2 base = fs[FeatureKind::MCNC].jet();
  base.set(0, 0, 0.0);
  for (auto _ : state) benchmark::DoNotOptimize(contact_order(base, fs[FeatureKind::PC].jet(), {0, 0}));
}
BENCHMARK(BM_ContactOrder);

void BM_Sweep(benchmark::State& state) {
  FamilySpec spec{random_patch(4, 7), {random_jet(2, 8)}};
  spec.samples = static_cast<int>(state.range(0));
  SweepOptions opt;
  opt.monitors = {CountMonitor::intersections(FeatureKind::LPL, FeatureKind::MCNC)};
  opt.keep_curves = false;
  for (auto _ : state) benchmark::DoNotOptimize(sweep(spec, opt));
}
BENCHMARK(BM_Sweep)->Arg(11)->Arg(41)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
