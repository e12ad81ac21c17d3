#include <benchmark/benchmark.h>

#include <cmath>

#include "dampwave/gauss_legendre.hpp"
#include "dampwave/harness.hpp"

namespace {

namespace quad = dampwave::quad;

void BM_GaussLegendrePanel(benchmark::State& state) {
  const auto& rule = quad::gauss_legendre(static_cast<int>(state.range(0)));
  double x0 = 0.0;
  for (auto _ : state) {
    double sum = 0.0;
    for (int i = 0; i < rule.points(); ++i) sum += rule.weights[i] * std::exp(x0 + rule.nodes[i]);
    benchmark::DoNotOptimize(sum);
    x0 += 1e-9;
  }
}
BENCHMARK(BM_GaussLegendrePanel)->Arg(8)->Arg(16)->Arg(32);

void BM_Sin2Integral(benchmark::State& state) {
  const double t = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(dampwave::harness::sin2_integral(3, t).value);
}
BENCHMARK(BM_Sin2Integral)->Arg(1000)->Arg(100000)->Arg(10000000)->Unit(benchmark::kMillisecond);

void BM_RiemannLebesgue(benchmark::State& state) {
  const double t = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(dampwave::harness::riemann_lebesgue_g(3, t));
}
BENCHMARK(BM_RiemannLebesgue)->Arg(1000)->Arg(100000)->Arg(10000000)->Unit(benchmark::kMillisecond);

}  // namespace
