// Timings for the hot paths: objective/gradient evaluation, full MAP fits,
// and the scoring metrics. Synthetic inputs are generated once per size.

#include <benchmark/benchmark.h>

#include "irtmap/fit.hpp"
#include "irtmap/metrics.hpp"
#include "irtmap/model.hpp"
#include "irtmap/synth.hpp"

namespace {

irtmap::InteractionTable make_table(std::int64_t students, std::int64_t skills,
                                    std::int64_t per_student) {
  irtmap::SynthSpec spec;
  spec.num_students = students;
  spec.num_skills = skills;
  spec.responses_per_student = per_student;
  spec.seed = 99;
  return irtmap::generate(spec).table;
}

void bench_objective(benchmark::State& state) {
  const auto table = make_table(state.range(0), 50, 100);
  const auto params =
      irtmap::ModelParams::zeros(table.num_students, table.num_skills);
  const irtmap::PriorConfig prior;
  for (auto _ : state) {
    benchmark::DoNotOptimize(irtmap::neg_log_posterior(params, table, prior));
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(table.records.size()));
}
BENCHMARK(bench_objective)->Arg(100)->Arg(1000);

void bench_gradient(benchmark::State& state) {
  const auto table = make_table(state.range(0), 50, 100);
  const auto params =
      irtmap::ModelParams::zeros(table.num_students, table.num_skills);
  const irtmap::PriorConfig prior;
  for (auto _ : state) {
    benchmark::DoNotOptimize(irtmap::gradient(params, table, prior));
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(table.records.size()));
}
BENCHMARK(bench_gradient)->Arg(100)->Arg(1000);

void bench_fit_map(benchmark::State& state) {
  const auto table = make_table(state.range(0), 20, 50);
  for (auto _ : state) {
    benchmark::DoNotOptimize(irtmap::fit_map(table, {}, {}));
  }
}
BENCHMARK(bench_fit_map)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

void bench_fit_baseline(benchmark::State& state) {
  const auto table = make_table(state.range(0), 20, 50);
  for (auto _ : state) {
    benchmark::DoNotOptimize(irtmap::fit_baseline(table, {}));
  }
}
BENCHMARK(bench_fit_baseline)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

void bench_auc(benchmark::State& state) {
  const auto table = make_table(200, 20, state.range(0) / 200);
  const auto fit = irtmap::fit_map(table, {}, {});
  std::vector<int> labels;
  std::vector<double> probs;
  for (const auto& r : table.records) {
    labels.push_back(r.correct);
    probs.push_back(irtmap::predict_prob(
        fit.params.theta[static_cast<std::size_t>(r.student)],
        fit.params.beta[static_cast<std::size_t>(r.skill)]));
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(irtmap::auc(labels, probs));
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(labels.size()));
}
BENCHMARK(bench_auc)->Arg(10000)->Arg(40000);

}  // namespace

BENCHMARK_MAIN();
