#include <benchmark/benchmark.h>

#include <random>

#include "dlsenum/engine.hpp"
#include "dlsenum/mtransform.hpp"
#include "dlsenum/sym_enum.hpp"
#include "dlsenum/workunits.hpp"

using namespace dlsenum;

namespace {

// Full DLS7 count, first row fixed.
void BM_CountDls7(benchmark::State& state) {
  const FillPlan plan = default_plan(Order(7), ConstraintSet::dls());
  Enumerator e(plan);
  u128 squares = 0;
  for (auto _ : state) {
    const auto r = e.enumerate();
    squares += r.total;
    benchmark::DoNotOptimize(r.total);
  }
  state.counters["squares/s"] = benchmark::Counter(static_cast<double>(squares), benchmark::Counter::kIsRate);
}
BENCHMARK(BM_CountDls7)->Unit(benchmark::kMillisecond);

// Random order-9 workunits at the default depth; arg toggles lookahead.
void BM_Dls9Workunits(benchmark::State& state) {
  const FillPlan plan = state.range(0) ? default_plan(Order(9), ConstraintSet::dls())
                                       : compute_plan(Order(9), ConstraintSet::dls(), FixedPrefix::first_row);
  const auto units = generate_workunits(plan, 10);
  std::mt19937_64 rng(9);
  Enumerator e(plan);
  u128 squares = 0;
  std::uint64_t nodes = 0;
  for (auto _ : state) {
    const auto r = e.enumerate(units[rng() % units.size()].symbols);
    squares += r.total;
    nodes += r.nodes;
  }
  state.counters["squares/s"] = benchmark::Counter(static_cast<double>(squares), benchmark::Counter::kIsRate);
  state.counters["nodes/s"] = benchmark::Counter(static_cast<double>(nodes), benchmark::Counter::kIsRate);
}
BENCHMARK(BM_Dls9Workunits)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->MinTime(3.0);

// Canonization of random order-8 hourglass designs.
void BM_Canonize(benchmark::State& state) {
  const Order o(8);
  const HourglassGroup group(o, ConstraintSet::dls());
  const FillPlan plan = hourglass_plan(o, ConstraintSet::dls());
  std::vector<SquareGrid> designs;
  Enumerator e(plan);
  std::mt19937_64 rng(8);
  while (designs.size() < 256) {
    e.reset();
    while (e.depth() < plan.boundary) {
      Mask l = e.candidates();
      if (!l) break;
      const int k = static_cast<int>(rng() % static_cast<unsigned>(std::popcount(l)));
      for (int j = 0; j < k; ++j) l &= l - 1;
      e.try_push(static_cast<Symbol>(std::countr_zero(l)));
    }
    if (e.depth() == plan.boundary) designs.push_back(e.grid());
  }
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(group.canonize(designs[i++ % designs.size()]));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_Canonize);

void BM_Plan(benchmark::State& state) {
  const Order o(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(default_plan(o, ConstraintSet::dls()));
}
BENCHMARK(BM_Plan)->Arg(8)->Arg(9)->Arg(10)->Arg(12);

}  // namespace
BENCHMARK_MAIN();
