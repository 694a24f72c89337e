// Coverage kernels (serial reference, OpenMP, rectangle-core) and the
// staircase rectangle scan against brute force.

#include <random>

#include <benchmark/benchmark.h>

#include "dmfb/empty_rect.hpp"
#include "dmfb/fault_tolerance.hpp"
#include "dmfb/pipeline.hpp"

using namespace dmfb;

namespace {

// PCR under the greedy layout, evaluated either on its bounding array or on
// the whole 37x37 grid.
const Placement& pcr_layout() {
  static const ProblemInstance inst = pcr_fixture();
  static const Placement p = greedy_baseline(inst).placement;
  return p;
}

// Sixteen concurrent modules of mixed size, greedily packed.
const Placement& mixed_layout() {
  // Placement only points at its instance, so the instance must outlive it.
  static const ProblemInstance inst = [] {
    ProblemInstance i;
    i.grid = {48, 48, 1.5};
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> side(2, 7);
    for (int n = 0; n < 16; ++n) {
      i.modules.push_back({"B" + std::to_string(n), side(rng), side(rng), 0.0, 1.0, true});
    }
    return i;
  }();
  static const Placement p = greedy_baseline(inst).placement;
  return p;
}

const Placement& pick(int which) { return which == 0 ? pcr_layout() : mixed_layout(); }

template <CoverageReport (*Kernel)(const Placement&, RelocationSpace)>
void coverage(benchmark::State& state) {
  const Placement& p = pick(static_cast<int>(state.range(0)));
  const auto space = static_cast<RelocationSpace>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(p, space).k);
}

void coverage_args(benchmark::internal::Benchmark* b) {
  for (int layout : {0, 1}) {
    for (auto space : {RelocationSpace::bounding_array, RelocationSpace::grid_bounds}) {
      b->Args({layout, static_cast<long>(space)});
    }
  }
  b->ArgNames({"layout", "space"})->Unit(benchmark::kMicrosecond);
}

OccupancyMatrix random_matrix(int side, double density) {
  std::mt19937 rng(side);
  std::bernoulli_distribution busy(density);
  OccupancyMatrix m(side, side);
  for (int r = 1; r <= side; ++r) {
    for (int c = 1; c <= side; ++c) m.set(r, c, busy(rng));
  }
  return m;
}

void rects_staircase(benchmark::State& state) {
  const OccupancyMatrix m = random_matrix(static_cast<int>(state.range(0)), 0.2);
  for (auto _ : state) benchmark::DoNotOptimize(maximal_empty_rects(m).size());
}

void rects_brute(benchmark::State& state) {
  const OccupancyMatrix m = random_matrix(static_cast<int>(state.range(0)), 0.2);
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_maximal_rects(m).size());
}

}  // namespace

BENCHMARK_TEMPLATE(coverage, coverage_report_serial)->Apply(coverage_args);
BENCHMARK_TEMPLATE(coverage, coverage_report)->Apply(coverage_args);
BENCHMARK_TEMPLATE(coverage, fast_coverage_report)->Apply(coverage_args);
BENCHMARK(rects_staircase)->Arg(10)->Arg(20)->Arg(64)->Unit(benchmark::kMicrosecond);
BENCHMARK(rects_brute)->Arg(10)->Arg(20)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
