#include <benchmark/benchmark.h>

#include "fairlens/harness.hpp"
#include "fairlens/synth.hpp"

using namespace fairlens;

namespace {

DatasetTable make_table(std::size_t rows) {
  auto spec = builtin_case("adult");
  spec.rows = rows;
  auto data = generate(spec, 7);
  return encode(data.table, data.schema);
}

void bm_fit(benchmark::State& state) {
  auto data = make_table(static_cast<std::size_t>(state.range(0)));
  auto [train, test] = split(data, 0.7, 1);
  auto weights = fair_balance_class(train);
  standardize(train, test);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fit(train, weights));
  }
}
BENCHMARK(bm_fit)->Arg(1000)->Arg(5000)->Arg(20000)->Unit(benchmark::kMillisecond);

void bm_reweigh(benchmark::State& state) {
  auto data = make_table(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(fair_balance_class(data));
  }
}
BENCHMARK(bm_reweigh)->Arg(10000)->Arg(50000);

void bm_metrics(benchmark::State& state) {
  auto data = make_table(static_cast<std::size_t>(state.range(0)));
  Eigen::VectorXi pred = data.labels;
  for (Eigen::Index i = 0; i < pred.size(); i += 7) pred(i) = 1 - pred(i);
  for (auto _ : state) {
    benchmark::DoNotOptimize(evaluate(data.labels, pred, data.sensitive, data.sensitive_names));
  }
}
BENCHMARK(bm_metrics)->Arg(10000)->Arg(50000);

}  // namespace

BENCHMARK_MAIN();
