// Serial vs OpenMP for the parallel kernels.
#include <benchmark/benchmark.h>

#include "bkvg/discretization.hpp"
#include "bkvg/quadrature.hpp"

namespace {

using namespace bkvg;

void BM_RangeSweep(benchmark::State& state) {
  const bool parallel = state.range(0) != 0;
  DiscreteOperator op = discretize(instantiate(Family::HardyImaginary, 2.0), Sign::Plus,
                                   default_range_mesh(static_cast<int>(state.range(1))));
  for (auto _ : state) benchmark::DoNotOptimize(numerical_range_sweep(op, 256, 0.02, parallel));
}
BENCHMARK(BM_RangeSweep)->ArgsProduct({{0, 1}, {1024, 4096}})->Unit(benchmark::kMillisecond);

void BM_IntegrateBatch(benchmark::State& state) {
  const bool parallel = state.range(0) != 0;
  std::vector<Integrand> fs;
  std::vector<double> hints;
  for (int k = 0; k < 64; ++k) {
    const cplx a(-0.9 + 0.05 * k, 0.4 * k);
    fs.push_back([a](double x) { return std::pow(x, a); });
    hints.push_back(a.real());
  }
  for (auto _ : state) benchmark::DoNotOptimize(integrate_batch(fs, hints, {}, parallel));
}
BENCHMARK(BM_IntegrateBatch)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_AccretivitySampling(benchmark::State& state) {
  const bool parallel = state.range(0) != 0;
  CertifiedFamily cf = certify(instantiate(Family::HardyImaginary, 1.0));
  ExtensionSpec s = ExtensionSpec::with_coefficient(cf, d_for_margin(cf, 0.5));
  for (auto _ : state) benchmark::DoNotOptimize(accretivity_sampling(s, 200, 1, parallel));
}
BENCHMARK(BM_AccretivitySampling)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
