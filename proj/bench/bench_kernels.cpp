#include <benchmark/benchmark.h>

#include "hfm/kernels.hpp"
#include "hfm/suites.hpp"

using namespace hfm;

namespace {

const TorusCovering cov(0.5, cplx(0.1, 0.9), 0.2);

void surface(benchmark::State& st, Exec exec) {
  const int n = int(st.range(0));
  for (auto _ : st)
    benchmark::DoNotOptimize(surface_integral(
        [](cplx s) { return weierstrass_p(s, cov) - 1.0 / (s * s); }, -cov.w() - cov.wp() + 0.013,
        2.0 * cov.w(), 2.0 * cov.wp(), n, exec));
}

void projector(benchmark::State& st, Exec exec) {
  auto q = DeformationParam::from_q(cplx(0, 3), true);
  for (auto _ : st) benchmark::DoNotOptimize(projector_action(cplx(0.11, 0.07), cov, q, 64, exec));
}

void suite(benchmark::State& st, const char* name, Exec exec) {
  SuiteConfig cfg;
  cfg.exec = exec;
  for (auto _ : st) benchmark::DoNotOptimize(run_suite(name, cfg));
}

}  // namespace

BENCHMARK_CAPTURE(surface, serial, Exec::serial)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(surface, parallel, Exec::parallel)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(projector, serial, Exec::serial)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(projector, parallel, Exec::parallel)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(suite, kernels_serial, "kernels", Exec::serial)->Unit(benchmark::kMillisecond)->Iterations(1);
BENCHMARK_CAPTURE(suite, kernels_parallel, "kernels", Exec::parallel)->Unit(benchmark::kMillisecond)->Iterations(1);
BENCHMARK_CAPTURE(suite, realdouble_serial, "realdouble", Exec::serial)->Unit(benchmark::kMillisecond)->Iterations(1);
BENCHMARK_CAPTURE(suite, realdouble_parallel, "realdouble", Exec::parallel)
    ->Unit(benchmark::kMillisecond)
    ->Iterations(1);

BENCHMARK_MAIN();
