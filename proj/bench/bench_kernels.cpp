#include <benchmark/benchmark.h>

#include "imexssp/kernels.hpp"

using namespace imexssp;

namespace {

const CoefficientSet& scheme() {
  static const CoefficientSet s = make_scheme("imex-biased-k4");
  return s;
}

const std::vector<ComplexValue>& lambdas() {
  static const std::vector<ComplexValue> l = [] {
    SamplingOptions so;
    so.n = 128;
    so.refine = false;
    return explicit_boundary(scheme(), so).finite_values();
  }();
  return l;
}

SamplingOptions theta_sampling() {
  SamplingOptions so;
  so.n = 512;
  return so;
}

template <auto Fn>
void BM_wedge(benchmark::State& state) {
  const auto so = theta_sampling();
  for (auto _ : state) benchmark::DoNotOptimize(Fn(scheme(), lambdas(), so, 1e-10));
}

template <auto Fn>
void BM_real_phi(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(Fn(scheme(), n, n));
}

template <auto Fn>
void BM_roots(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto mus = kernels::complex_grid(-4.0, 2.0, -3.0, 3.0, n, n);
  for (auto _ : state) benchmark::DoNotOptimize(Fn(scheme(), ComplexValue(-0.5, 0.2), mus, RootOptions{}));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(mus.size()));
}

}  // namespace

BENCHMARK(BM_wedge<kernels::serial::min_wedge_over_lambdas>)->Name("wedge/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_wedge<kernels::omp::min_wedge_over_lambdas>)->Name("wedge/omp")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_real_phi<kernels::serial::min_real_phi_on_boundary>)
    ->Name("real_phi/serial")
    ->Arg(256)
    ->Arg(1024)
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_real_phi<kernels::omp::min_real_phi_on_boundary>)
    ->Name("real_phi/omp")
    ->Arg(256)
    ->Arg(1024)
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_roots<kernels::serial::root_condition_batch>)->Name("roots/serial")->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_roots<kernels::omp::root_condition_batch>)->Name("roots/omp")->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
