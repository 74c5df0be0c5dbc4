// Serial reference against the OpenMP batch, and dense against sparse LU.
#include <thread>

#include <benchmark/benchmark.h>

#include "knotperc/pipeline.hpp"
#include "knotperc/random.hpp"

using namespace knotperc;

namespace {

RunConfig batch_config(int size, int workers) {
  RunConfig c;
  c.size = size;
  c.samples = 64;
  c.base_seed = 11;
  c.workers = workers;
  c.shake_rounds = kDefaultShakeRounds;
  return c;
}

int all_cores() { return static_cast<int>(std::max(1U, std::thread::hardware_concurrency())); }

void BM_BatchSerial(benchmark::State& state) {
  const RunConfig c = batch_config(static_cast<int>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(run_batch_serial(c));
  state.SetItemsProcessed(static_cast<long>(state.iterations() * c.samples));
}

void BM_BatchParallel(benchmark::State& state) {
  const RunConfig c = batch_config(static_cast<int>(state.range(0)), all_cores());
  for (auto _ : state) benchmark::DoNotOptimize(run_batch(c));
  state.SetItemsProcessed(static_cast<long>(state.iterations() * c.samples));
  state.counters["workers"] = c.workers;
}

AlexanderMatrix raw_matrix(int size) {
  const SampleSeeds s = sample_seeds(5, 0);
  const auto grid = sample_colouring(CubeSize(size), Boundary::Dobrushin, s.colouring);
  const auto curve = trace_curve(grid, FacePerturbation(s.perturbation(0)));
  return delete_columns(build_matrix(build_code(curve, detect_crossings(curve))));
}

void BM_DenseLu(benchmark::State& state) {
  const AlexanderMatrix m = raw_matrix(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(dense_log_abs(m, EvalPoint::MinusOne));
  state.counters["n"] = static_cast<double>(m.rows);
}

void BM_SparseLu(benchmark::State& state) {
  const AlexanderMatrix m = raw_matrix(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(sparse_log_abs(m, EvalPoint::MinusOne));
  state.counters["n"] = static_cast<double>(m.rows);
}

void BM_ExactBareiss(benchmark::State& state) {
  const AlexanderMatrix m = raw_matrix(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(eval_exact(m, EvalPoint::MinusOne));
  state.counters["n"] = static_cast<double>(m.rows);
}

}  // namespace

BENCHMARK(BM_BatchSerial)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_BatchParallel)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_DenseLu)->Arg(6)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SparseLu)->Arg(6)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ExactBareiss)->Arg(6)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
