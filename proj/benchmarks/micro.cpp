#include <benchmark/benchmark.h>

#include <random>

#include "tdiff/tdiff.hpp"

using namespace tdiff;

namespace {

ProblemInstance pa_instance(std::size_t n, std::size_t step) {
  std::vector<std::size_t> k{1, 2, 3, 4};
  return random_thresholds(preferential_attachment(n, k, 7), step, 8);
}

void BM_Simulate(benchmark::State& state) {
  auto p = pa_instance(static_cast<std::size_t>(state.range(0)), 5);
  auto seeds = run_heuristic(p, HeuristicKind::Degree);
  for (auto _ : state) benchmark::DoNotOptimize(simulate(p, seeds));
}
BENCHMARK(BM_Simulate)->Arg(50)->Arg(200)->Arg(1000);

void BM_Heuristic(benchmark::State& state) {
  auto p = pa_instance(200, 5);
  auto kind = kAllHeuristics[static_cast<std::size_t>(state.range(0))];
  state.SetLabel(std::string(to_string(kind)));
  for (auto _ : state) benchmark::DoNotOptimize(run_heuristic(p, kind));
}
BENCHMARK(BM_Heuristic)->DenseRange(0, static_cast<int>(kAllHeuristics.size()) - 1);

void BM_Betweenness(benchmark::State& state) {
  auto p = pa_instance(static_cast<std::size_t>(state.range(0)), 5);
  for (auto _ : state) benchmark::DoNotOptimize(betweenness(p.graph()));
}
BENCHMARK(BM_Betweenness)->Arg(50)->Arg(200);

// Every sink of one node on a fractional point from the uniform assignment.
void BM_FlowScan(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  auto p = pa_instance(n, 2);
  AssignmentMatrix x(n);
  for (NodeId i = 0; i < n; ++i)
    for (Time t = 1; t <= n; ++t) x(i, t) = 1.0 / static_cast<double>(n);
  FlowNetwork net(p, x, 0);
  NodeId sink = static_cast<NodeId>(n - 1);
  for (auto _ : state) benchmark::DoNotOptimize(net.check_node(sink, 1e-7));
}
BENCHMARK(BM_FlowScan)->Arg(10)->Arg(20)->Arg(30)->Unit(benchmark::kMillisecond);

void BM_DenseSimplex(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  LpModel model;
  for (std::size_t j = 0; j < m; ++j) model.add_variable(0.0, 1.0, -u(rng));
  for (std::size_t r = 0; r < m; ++r) {
    LpRow row;
    for (std::size_t j = 0; j < m; ++j)
      if (rng() % 4 == 0) row.terms.push_back({j, u(rng)});
    row.upper = 0.25 * static_cast<double>(row.terms.size());
    model.add_row(std::move(row));
  }
  for (auto _ : state) {
    DenseDualSimplex lp;
    lp.load(model);
    benchmark::DoNotOptimize(lp.solve());
  }
}
BENCHMARK(BM_DenseSimplex)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_Relaxation(benchmark::State& state) {
  auto p = pa_instance(static_cast<std::size_t>(state.range(0)), 2);
  NodeId first = top_degree_nodes(p.graph(), 1).front();
  for (auto _ : state) benchmark::DoNotOptimize(solve_relaxation(p, first));
}
BENCHMARK(BM_Relaxation)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_Rounding(benchmark::State& state) {
  auto p = pa_instance(12, 2);
  auto sol = solve_with_first_node_guessing(p, {}, top_degree_nodes(p.graph(), 1));
  auto cfg = RoundingConfig::practical(12);
  for (auto _ : state) {
    benchmark::DoNotOptimize(round_solution(sol, p, cfg));
    ++cfg.rng_seed;
  }
}
BENCHMARK(BM_Rounding)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
