#include <benchmark/benchmark.h>

#include "eqstab/kernels.hpp"
#include "eqstab/path.hpp"

using namespace eqstab;

namespace {

struct GridCase {
  JacksonEvaluator ev{make_torus_params(3, {0.1, 0.37, -0.45})};
  std::vector<KClass> ks{KClass::line(3, 1), KClass::line(3, 0) - 3 * KClass::line(3, 1), KClass::line(3, 2)};
  std::vector<double> radii = log_grid(5.0, 50.0, 64);
};

GridCase& grid_case() {
  static GridCase c;
  return c;
}

void BM_ChargeGridSerial(benchmark::State& st) {
  auto& c = grid_case();
  for (auto _ : st) benchmark::DoNotOptimize(charge_grid_serial(c.ev, c.ks, 3, 0.05, c.radii));
}

void BM_ChargeGridOpenMP(benchmark::State& st) {
  auto& c = grid_case();
  for (auto _ : st) benchmark::DoNotOptimize(charge_grid(c.ev, c.ks, 3, 0.05, c.radii));
}

void BM_ThetaSweepSerial(benchmark::State& st) {
  const int m = static_cast<int>(st.range(0));
  const auto t = admissible_thetas(m, 2000);
  for (auto _ : st) benchmark::DoNotOptimize(theta_sweep_serial(m, t));
}

void BM_ThetaSweepOpenMP(benchmark::State& st) {
  const int m = static_cast<int>(st.range(0));
  const auto t = admissible_thetas(m, 2000);
  for (auto _ : st) benchmark::DoNotOptimize(theta_sweep(m, t));
}

}  // namespace

BENCHMARK(BM_ChargeGridSerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ChargeGridOpenMP)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ThetaSweepSerial)->Arg(3)->Arg(6)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ThetaSweepOpenMP)->Arg(3)->Arg(6)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
