#include <benchmark/benchmark.h>

#include <numeric>

#include "pddlval/closure.hpp"
#include "pddlval/parser.hpp"
#include "towers.hpp"

namespace {

using namespace pddlval;

GroundTask tower_task(int n) {
  const DomainAst d = parse_domain(bench::tower_domain());
  const ProblemAst p = parse_problem(bench::tower_problem(n), d);
  return ground(d, p);
}

void BM_ClosureSemiNaive(benchmark::State& state) {
  const GroundTask t = tower_task(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(closure(t.init, t.rules, t.facts.size()));
  }
  state.counters["rules"] = static_cast<double>(t.rules.size());
}
BENCHMARK(BM_ClosureSemiNaive)->Arg(4)->Arg(8)->Arg(16)->Arg(24);

void BM_ClosureNaiveSweep(benchmark::State& state) {
  const GroundTask t = tower_task(static_cast<int>(state.range(0)));
  std::vector<std::size_t> order(t.rules.size());
  std::iota(order.begin(), order.end(), 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(closure_in_order(t.init, t.rules, order, t.facts.size()));
  }
}
BENCHMARK(BM_ClosureNaiveSweep)->Arg(4)->Arg(8)->Arg(16);

}  // namespace
