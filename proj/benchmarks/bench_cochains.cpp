#include <benchmark/benchmark.h>

#include "hochmod/builders.hpp"
#include "hochmod/modular.hpp"

using namespace hochmod;

namespace {

template <class K>
void differential(benchmark::State& state, const char* preset, K F) {
  auto H = build_preset(preset, F).hopf;
  CochainComplex<K> C(H.algebra(), regular_bimodule(H.algebra()));
  for (auto _ : state) benchmark::DoNotOptimize(C.differential_matrix(state.range(0)));
}

template <class K>
void cohomology(benchmark::State& state, const char* preset, K F) {
  auto H = build_preset(preset, F).hopf;
  CochainComplex<K> C(H.algebra(), regular_bimodule(H.algebra()));
  for (auto _ : state) benchmark::DoNotOptimize(C.cohomology(state.range(0)).dim());
}

template <class K>
void frak_s_family(benchmark::State& state, const char* preset, K F) {
  auto data = build_preset(preset, F);
  auto rho = find_right_integrals(data.hopf).rho;
  for (auto _ : state) {
    ModularCochains<K> mc(data.hopf, *data.R, rho, std::nullopt, std::size_t(state.range(0)));
    benchmark::DoNotOptimize(mc.frak_S().top());
  }
}

}  // namespace

BENCHMARK_CAPTURE(differential, D_kZ3_Q, "D-kZ3", Rationals{})->DenseRange(0, 2)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(differential, D_sweedler_F5, "D-sweedler", PrimeField(5))->DenseRange(0, 2)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(cohomology, D_kZ3_Q, "D-kZ3", Rationals{})->DenseRange(0, 2)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(cohomology, D_sweedler_F5, "D-sweedler", PrimeField(5))->DenseRange(0, 2)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(frak_s_family, D_kZ2_Q, "D-kZ2", Rationals{})->DenseRange(1, 3)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(frak_s_family, D_sweedler_F5, "D-sweedler", PrimeField(5))->DenseRange(1, 2)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
