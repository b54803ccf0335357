#include <benchmark/benchmark.h>

#include "pddlval/executor.hpp"
#include "pddlval/parser.hpp"
#include "towers.hpp"

namespace {

using namespace pddlval;

void BM_GroundTower(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const DomainAst d = parse_domain(bench::tower_domain());
  const ProblemAst p = parse_problem(bench::tower_problem(n), d);
  for (auto _ : state) benchmark::DoNotOptimize(ground(d, p));
}
BENCHMARK(BM_GroundTower)->Arg(4)->Arg(8)->Arg(16);

void BM_ValidateUnstack(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const DomainAst d = parse_domain(bench::tower_domain());
  const ProblemAst p = parse_problem(bench::tower_problem(n), d);
  const GroundTask t = ground(d, p);
  const PlanFile plan = parse_plan(bench::unstack_plan(n), d, p);
  for (auto _ : state) {
    const Verdict v = validate(t, plan);
    if (!v.valid) state.SkipWithError("plan unexpectedly invalid");
    benchmark::DoNotOptimize(v);
  }
  state.counters["happenings"] = static_cast<double>(plan.steps.size());
}
BENCHMARK(BM_ValidateUnstack)->Arg(4)->Arg(8)->Arg(16);

}  // namespace
