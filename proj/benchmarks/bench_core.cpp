#include <benchmark/benchmark.h>

#include "ehm/builtins.hpp"
#include "ehm/morse.hpp"
#include "ehm/weyl.hpp"

using namespace ehm;

static void BM_JurkiewiczChambers(benchmark::State& state) {
  Scenario sc = builtin("jurkiewicz").scenario;
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_chambers(sc));
}
BENCHMARK(BM_JurkiewiczChambers)->Unit(benchmark::kMillisecond);

static void BM_ProjectivePlaneIndex(benchmark::State& state) {
  MorseContext ctx(builtin("cp2", {.r = state.range(0)}).scenario);
  auto window = ctx.default_window(3);
  for (auto _ : state) benchmark::DoNotOptimize(index_character(ctx, window));
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations() * window.size()));
}
BENCHMARK(BM_ProjectivePlaneIndex)->Arg(2)->Arg(8)->Unit(benchmark::kMillisecond);

static void BM_TolmanObstruction(benchmark::State& state) {
  MorseContext ctx(builtin("tolman").scenario);
  for (auto _ : state) benchmark::DoNotOptimize(detect_obstruction(ctx));
}
BENCHMARK(BM_TolmanObstruction)->Unit(benchmark::kMillisecond);

static void BM_G2Character(benchmark::State& state) {
  RootSystem rs = RootSystem::of_type(RootType::G2);
  for (auto _ : state) benchmark::DoNotOptimize(weyl_character(rs, rs.rho()));
}
BENCHMARK(BM_G2Character)->Unit(benchmark::kMillisecond);

static void BM_TermCoefficient(benchmark::State& state) {
  const LatticeVector theta{1, 2, 3};
  PolarizedTerm term(0, FormalCharacter::monomial({0, 0, 0}),
                     {LatticeVector{1, 0, 0}, LatticeVector{0, 1, 0}, LatticeVector{2, 1, -1}, LatticeVector{0, 0, 1}},
                     theta);
  const LatticeVector target{-state.range(0), -state.range(0), -state.range(0)};
  for (auto _ : state) benchmark::DoNotOptimize(term_coefficient(term, target, theta));
}
BENCHMARK(BM_TermCoefficient)->Arg(2)->Arg(6)->Arg(12);
BENCHMARK_MAIN();
