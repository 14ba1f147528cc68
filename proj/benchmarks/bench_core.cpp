#include <benchmark/benchmark.h>

#include <complex>

#include "toda/verifier.hpp"

namespace {

using toda::Complex;
using toda::ComplexPoly;
using toda::OdeSystem;

OdeSystem airy_system() {
  return {1, {ComplexPoly::monomial(1, 0.5), ComplexPoly{}}};
}

void BM_continue_airy(benchmark::State& state) {
  const OdeSystem ode = airy_system();
  const Complex target{static_cast<double>(state.range(0)), 0.5};
  for (auto _ : state) {
    auto basis = continue_basis(ode, target, 2, 1e-10);
    benchmark::DoNotOptimize(basis);
  }
}
BENCHMARK(BM_continue_airy)->Arg(5)->Arg(15)->Arg(30);

void BM_derived_norms_rank3(benchmark::State& state) {
  const OdeSystem ode{3,
                      {ComplexPoly::constant({0.3, 0.1}), ComplexPoly::monomial(1, 0.4),
                       ComplexPoly::monomial(2, {0.2, -0.5}), ComplexPoly::constant(0.7)}};
  const auto basis = continue_basis(ode, {2.0, 1.0}, 4, 1e-10);
  for (auto _ : state) {
    auto norms = derived_log_norms(basis);
    benchmark::DoNotOptimize(norms);
  }
}
BENCHMARK(BM_derived_norms_rank3);

void BM_toda_residual_rank2(benchmark::State& state) {
  const OdeSystem ode{2,
                      {ComplexPoly::monomial(1, 0.3), ComplexPoly::constant({0.0, 0.6}),
                       ComplexPoly::monomial(2, 0.2)}};
  for (auto _ : state) {
    auto report = toda_residual(ode, {1.0, -0.5}, 1e-3, 1e-10);
    benchmark::DoNotOptimize(report);
  }
}
BENCHMARK(BM_toda_residual_rank2);

void BM_growth_sphere(benchmark::State& state) {
  const OdeSystem ode{1, {ComplexPoly{}, ComplexPoly{}}};
  const std::vector<double> radii{1.0, 2.0, 4.0, 8.0};
  for (auto _ : state) {
    auto curve = growth_functions(ode, radii, 64, 32);
    benchmark::DoNotOptimize(curve);
  }
}
BENCHMARK(BM_growth_sphere);

}  // namespace

BENCHMARK_MAIN();
