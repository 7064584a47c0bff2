#include "mlab/deriv.hpp"
#include "mlab/tensors.hpp"
#include "mlab/verify.hpp"

#include <benchmark/benchmark.h>

namespace {

mlab::NormSpec quartic(int n) { return mlab::NormSpec::quartic_reg(n, 0.2); }

mlab::Vector witness(int n) {
  mlab::Vector y(n);
  for (int i = 0; i < n; ++i) y[i] = 1.0 / (1.0 + i);
  return y;
}

void BM_JetOrder4(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto spec = quartic(n);
  const auto y = witness(n);
  for (auto _ : state) benchmark::DoNotOptimize(mlab::jet_of_F2(spec, y, 4));
}
BENCHMARK(BM_JetOrder4)->Arg(2)->Arg(3)->Arg(4);

void BM_CurvatureCartan(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto geo = mlab::PointGeometry::at(quartic(n), witness(n), 4);
  for (auto _ : state) benchmark::DoNotOptimize(geo.curvature_cartan());
}
BENCHMARK(BM_CurvatureCartan)->Arg(3)->Arg(4);

void BM_CurvatureConnection(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto geo = mlab::PointGeometry::at(quartic(n), witness(n), 4);
  for (auto _ : state) benchmark::DoNotOptimize(geo.curvature_connection());
}
BENCHMARK(BM_CurvatureConnection)->Arg(3)->Arg(4);

void BM_FlatnessScan(benchmark::State& state) {
  const auto spec = quartic(3);
  mlab::SamplePlan plan;
  plan.count = 50;
  for (auto _ : state) benchmark::DoNotOptimize(mlab::flatness_scan(spec, plan));
}
BENCHMARK(BM_FlatnessScan)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
