#include <benchmark/benchmark.h>

#include <numbers>

#include "qmonty/analysis.hpp"
#include "qmonty/channels.hpp"
#include "qmonty/game.hpp"

using namespace qmonty;

namespace {

void BM_PlayNoiseless(benchmark::State& state) {
  const GameConfig cfg = case_config(1, 0.0, 0.4);
  const GameOperators ops = GameOperators::canonical();
  for (auto _ : state) benchmark::DoNotOptimize(play(cfg, ops).payoff);
}
BENCHMARK(BM_PlayNoiseless);

void BM_PlayCase(benchmark::State& state) {
  const int id = static_cast<int>(state.range(0));
  const GameConfig cfg = case_config(id, id <= 4 ? 0.8 : 0.3, 0.4);
  const GameOperators ops = GameOperators::canonical();
  for (auto _ : state) benchmark::DoNotOptimize(play(cfg, ops).payoff);
}
BENCHMARK(BM_PlayCase)->DenseRange(1, 7);

const DensityMatrix& psi2_density() {
  static const DensityMatrix rho = density_from_pure(initial_state(InitialStateKind::psi2));
  return rho;
}

void BM_LocalSequentialSE(benchmark::State& state) {
  const KrausChannel ch = se_single(0.8);
  for (auto _ : state) benchmark::DoNotOptimize(apply_local_sequential(ch, psi2_density()));
}
BENCHMARK(BM_LocalSequentialSE);

void BM_ExtendedSE(benchmark::State& state) {
  const KrausChannel ch = extend_three(se_single(0.8));
  for (auto _ : state) benchmark::DoNotOptimize(apply(ch, psi2_density()));
}
BENCHMARK(BM_ExtendedSE);

void BM_LocalSequentialGP(benchmark::State& state) {
  const KrausChannel ch = gp_single(0.3);
  for (auto _ : state) benchmark::DoNotOptimize(apply_local_sequential(ch, psi2_density()));
}
BENCHMARK(BM_LocalSequentialGP);

void BM_ExtendedGP(benchmark::State& state) {
  const KrausChannel ch = extend_three(gp_single(0.3));
  for (auto _ : state) benchmark::DoNotOptimize(apply(ch, psi2_density()));
}
BENCHMARK(BM_ExtendedGP)->Unit(benchmark::kMillisecond);

void BM_SweepCase7(benchmark::State& state) {
  const auto noise = linspace(0.0, 1.0, 101);
  const auto gamma = linspace(0.0, std::numbers::pi / 2.0, 21);
  for (auto _ : state) benchmark::DoNotOptimize(sweep_case(7, noise, gamma).rows.size());
}
BENCHMARK(BM_SweepCase7)->Unit(benchmark::kMillisecond);

void BM_ThresholdCase1(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(threshold(1, 0.1, 2.0));
}
BENCHMARK(BM_ThresholdCase1)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
