#include <gtest/gtest.h>

#include <cmath>

#include "dmfb/annealer.hpp"
#include "dmfb/error.hpp"
#include "support.hpp"

using namespace dmfb;
using dmfb::testing::instance;
using dmfb::testing::module;

namespace {

AnnealParams quick(std::uint64_t seed = 1) {
  AnnealParams a;
  a.t_initial = 100.0;
  a.iters_per_module = 40;
  a.rng_seed = seed;
  return a;
}

}  // namespace

TEST(Params, Validation) {
  AnnealParams a;
  EXPECT_NO_THROW(a.validate());
  a.cooling_alpha = 1.0;
  EXPECT_THROW(a.validate(), std::invalid_argument);
  a = {};
  a.p_single_move = 0.0;
  EXPECT_THROW(a.validate(), std::invalid_argument);
  a = {};
  a.window_min = 0;
  EXPECT_THROW(a.validate(), std::invalid_argument);
  a = {};
  a.t_initial = 0.0;
  EXPECT_THROW(a.validate(), std::invalid_argument);

  CostWeights w;
  w.beta_ft = -1.0;
  EXPECT_THROW(w.validate(), std::invalid_argument);
}

TEST(Params, ResolvedDefaults) {
  const ProblemInstance pcr = pcr_fixture();
  const AnnealParams a = AnnealParams{}.resolve(pcr);
  EXPECT_EQ(a.window_initial, 10000);
  AnnealParams small;
  small.t_initial = 5.0;
  EXPECT_EQ(small.resolve(pcr).window_initial, 37);

  const CostWeights w = CostWeights{}.resolve(pcr);
  EXPECT_DOUBLE_EQ(w.lambda_overlap, 2.0 * 24);  // largest module: 24 cells
  CostWeights zero_alpha;
  zero_alpha.alpha_area = 0.0;
  EXPECT_GT(zero_alpha.resolve(pcr).lambda_overlap, 0.0);
}

TEST(InitialPlacement, Examples) {
  const ProblemInstance one = instance(6, 6, {module("m", 4, 4)});
  EXPECT_EQ(initial_placement(one)[0], (PlacedModule{1, 1, false}));

  const ProblemInstance two = instance(4, 4, {module("a", 2, 2), module("b", 2, 2)});
  const Placement p = initial_placement(two);
  EXPECT_EQ(overlap_penalty(p), 0);
  EXPECT_TRUE(p.within_core());

  const ProblemInstance pcr = pcr_fixture();
  const Placement q = initial_placement(pcr);
  EXPECT_TRUE(is_feasible(q));
  EXPECT_TRUE(q.within_core());

  const ProblemInstance tight = instance(2, 3, {module("a", 2, 2), module("b", 2, 2)});
  EXPECT_THROW(initial_placement(tight), InfeasibleError);
}

TEST(Cost, AreaOnly) {
  const ProblemInstance inst = dmfb::testing::eight_covered_instance();
  const Placement p(inst, dmfb::testing::eight_covered_layout());
  const CostWeights w = CostWeights{1.0, 0.0, 10.0};
  EXPECT_DOUBLE_EQ(cost(p, w, false), 63.0);
  EXPECT_DOUBLE_EQ(cost(p, w, true), 63.0);
}

TEST(Cost, OverlapPenaltyIsLinear) {
  // The 63-cell layout plus a concurrent 2x2 block sharing 2 cells with M2.
  ProblemInstance inst = dmfb::testing::eight_covered_instance();
  inst.modules.push_back(module("M3", 2, 2, 0, 1, false));
  std::vector<PlacedModule> at = dmfb::testing::eight_covered_layout();
  at.push_back({1, 2, false});
  const Placement p(inst, at);
  ASSERT_EQ(overlap_penalty(p), 2);
  const CostBreakdown c = evaluate(p, CostWeights{1.0, 0.0, 10.0}, false);
  EXPECT_EQ(c.cells, 63);
  EXPECT_DOUBLE_EQ(c.total, 63.0 + 20.0);
  // Infeasible: the fault-tolerance term is skipped.
  EXPECT_EQ(evaluate(p, CostWeights{1.0, 30.0, 10.0}, true).k, 0);
}

TEST(Cost, WeightedCoveredCells) {
  const ProblemInstance inst = dmfb::testing::sixty_two_covered_instance();
  const Placement p(inst, dmfb::testing::sixty_two_covered_layout());
  CostWeights w{1.0, 30.0, 10.0, FtTerm::covered_cells};
  const CostBreakdown c = evaluate(p, w, true);
  EXPECT_EQ(c.cells, 77);
  EXPECT_EQ(c.k, 62);
  EXPECT_DOUBLE_EQ(c.total, 77.0 - 1860.0);
  EXPECT_DOUBLE_EQ(c.total, -1783.0);

  w.ft_term = FtTerm::fti;
  EXPECT_DOUBLE_EQ(cost(p, w, true), 77.0 - 30.0 * 62.0 / 77.0);
  w.ft_term = FtTerm::covered_used_cells;
  // Unused cells: 77 - 36 - 8 = 33, all covered.
  EXPECT_DOUBLE_EQ(cost(p, w, true), 77.0 - 30.0 * (62.0 - 33.0));
}

TEST(Window, LinearRule) {
  AnnealParams a;
  a.t_initial = 1000.0;
  a.window_initial = 16;
  a.window_min = 1;
  EXPECT_EQ(window_span(1000.0, a), 16);
  EXPECT_EQ(window_span(500.0, a), 8);
  EXPECT_EQ(window_span(1e-9, a), 1);
  a.window_min = 3;
  EXPECT_EQ(window_span(1e-9, a), 3);
}

TEST(Propose, SingleModuleAlwaysDisplaces) {
  const ProblemInstance inst = instance(8, 8, {module("m", 2, 3)});
  const Placement p(inst, {{3, 3, false}});
  const AnnealParams a = AnnealParams{}.resolve(inst);
  Rng rng(4);
  for (int i = 0; i < 500; ++i) {
    const Move m = propose(p, a.t_initial, a, MoveSet::all(), rng);
    EXPECT_TRUE(m.kind == MoveKind::displace || m.kind == MoveKind::displace_rotate);
  }
}

TEST(Propose, MinimumWindowStaysAdjacent) {
  const ProblemInstance inst = instance(10, 10, {module("a", 2, 2), module("b", 3, 1)});
  const Placement p(inst, {{4, 4, false}, {6, 7, false}});
  AnnealParams a = AnnealParams{}.resolve(inst);
  Rng rng(5);
  for (int i = 0; i < 2000; ++i) {
    const Move m = propose(p, 1e-9, a, MoveSet::displacements(), rng);
    ASSERT_EQ(window_span(1e-9, a), 1);
    const PlacedModule& from = p[m.first];
    EXPECT_LE(std::abs(m.target.row - from.row), 1);
    EXPECT_LE(std::abs(m.target.col - from.col), 1);
  }
}

TEST(Propose, RespectsMoveSetAndRotatability) {
  const ProblemInstance inst =
      instance(10, 10, {module("a", 2, 3, 0, 1, false), module("b", 3, 1, 0, 1, false)});
  const Placement p(inst, {{1, 1, false}, {5, 5, false}});
  const AnnealParams a = AnnealParams{}.resolve(inst);
  Rng rng(6);
  for (int i = 0; i < 1000; ++i) {
    const Move m = propose(p, 50.0, a, MoveSet::all(), rng);
    EXPECT_FALSE(m.rotate_first);
    EXPECT_FALSE(m.rotate_second);
    const Move d = propose(p, 50.0, a, MoveSet::displacements(), rng);
    EXPECT_TRUE(d.kind == MoveKind::displace);
  }
}

TEST(Propose, SeededSequenceRepeats) {
  const ProblemInstance pcr = pcr_fixture();
  const Placement p = initial_placement(pcr);
  const AnnealParams a = AnnealParams{}.resolve(pcr);
  Rng r1(42), r2(42);
  for (int i = 0; i < 300; ++i) {
    const Move x = propose(p, 300.0, a, MoveSet::all(), r1);
    const Move y = propose(p, 300.0, a, MoveSet::all(), r2);
    ASSERT_EQ(x.kind, y.kind);
    ASSERT_EQ(x.first, y.first);
    ASSERT_EQ(x.second, y.second);
    ASSERT_EQ(x.target, y.target);
    ASSERT_EQ(x.rotate_first, y.rotate_first);
    ASSERT_EQ(x.rotate_second, y.rotate_second);
  }
}

TEST(ApplyMove, InterchangeAndBounds) {
  const ProblemInstance inst = instance(6, 6, {module("a", 2, 2), module("b", 1, 3)});
  const Placement p(inst, {{1, 1, false}, {4, 5, false}});
  Move swap{MoveKind::interchange, 0, 1, {}, false, false};
  const auto q = apply_move(p, swap);
  ASSERT_TRUE(q.has_value());
  EXPECT_EQ((*q)[0], (PlacedModule{4, 5, false}));
  EXPECT_EQ((*q)[1], (PlacedModule{1, 1, false}));

  Move off{MoveKind::displace, 0, 0, {6, 6}, false, false};
  EXPECT_FALSE(apply_move(p, off).has_value());
  Move turn{MoveKind::displace_rotate, 1, 0, {4, 4}, true, false};
  ASSERT_TRUE(apply_move(p, turn).has_value());
  EXPECT_TRUE((*apply_move(p, turn))[1].rotated);
}

TEST(Metropolis, Rule) {
  Rng rng(3);
  for (int i = 0; i < 1000; ++i) EXPECT_TRUE(metropolis_accept(-5.0, 1e-6, rng));
  EXPECT_TRUE(metropolis_accept(0.0, 1.0, rng));
  int accepted = 0;
  const int trials = 10000;
  for (int i = 0; i < trials; ++i) accepted += metropolis_accept(7.0, 7.0, rng) ? 1 : 0;
  EXPECT_NEAR(static_cast<double>(accepted) / trials, std::exp(-1.0), 0.02);
}

TEST(Anneal, TemperatureScheduleAndStop) {
  const ProblemInstance pcr = pcr_fixture();
  AnnealParams a = quick();
  a.window_initial = 40;
  std::vector<int> rounds_seen;
  std::vector<double> temps;
  std::vector<int> windows;
  long count = 0;
  const AnnealOutcome out = anneal(pcr, initial_placement(pcr), a, CostWeights{}, false,
                                   MoveSet::all(), [&](const AnnealStep& s) {
                                     ++count;
                                     if (rounds_seen.empty() || rounds_seen.back() != s.round) {
                                       rounds_seen.push_back(s.round);
                                       temps.push_back(s.temperature);
                                       windows.push_back(s.window);
                                     }
                                   });
  EXPECT_EQ(count, out.iterations);
  EXPECT_EQ(out.iterations, static_cast<long>(out.rounds) * 40 * 7);
  ASSERT_EQ(static_cast<int>(temps.size()), out.rounds);
  for (int i = 0; i < out.rounds; ++i) {
    EXPECT_DOUBLE_EQ(temps[static_cast<std::size_t>(i)], 100.0 * std::pow(0.9, i));
  }
  EXPECT_EQ(windows.back(), 1);
  ASSERT_GE(windows.size(), 2u);
  EXPECT_GT(windows[windows.size() - 2], 1);
  EXPECT_DOUBLE_EQ(out.final_temperature, temps.back());
}

TEST(Anneal, ReturnsBestFeasibleSeen) {
  const ProblemInstance pcr = pcr_fixture();
  double best_seen = 1e300;
  const CostWeights w = CostWeights{}.resolve(pcr);
  const Placement start = initial_placement(pcr);
  best_seen = cost(start, w, false);
  const AnnealOutcome out = anneal(pcr, start, quick(3), w, false, MoveSet::all(),
                                   [&](const AnnealStep& s) {
                                     if (s.feasible) best_seen = std::min(best_seen, s.cost);
                                   });
  ASSERT_TRUE(out.feasible);
  EXPECT_TRUE(is_feasible(out.placement));
  EXPECT_DOUBLE_EQ(out.cost.total, best_seen);
  EXPECT_LE(out.cost.cells, array_area_cells(start).cell_count);
}

TEST(Anneal, Deterministic) {
  const ProblemInstance pcr = pcr_fixture();
  const AnnealOutcome a = anneal(pcr, initial_placement(pcr), quick(9), CostWeights{}, false);
  const AnnealOutcome b = anneal(pcr, initial_placement(pcr), quick(9), CostWeights{}, false);
  EXPECT_EQ(a.placement, b.placement);
  EXPECT_EQ(a.accepted, b.accepted);
  EXPECT_DOUBLE_EQ(a.cost.total, b.cost.total);
}

TEST(Anneal, StaysInsideCore) {
  const ProblemInstance inst = instance(6, 6, {module("a", 2, 3), module("b", 3, 3)});
  bool left_core = false;
  const AnnealOutcome out = anneal(inst, initial_placement(inst), quick(2), CostWeights{}, false,
                                   MoveSet::all(), [&](const AnnealStep& s) {
                                     // Every state after a decision is inside.
                                     left_core = left_core || (s.accepted && !s.in_bounds);
                                   });
  EXPECT_FALSE(left_core);
  EXPECT_TRUE(out.placement.within_core());
  EXPECT_EQ(out.cost.cells, 15);
}

TEST(Anneal, FaultTermRaisesTolerance) {
  // Area alone packs the two modules tightly; a heavy FTI weight spreads
  // them enough that faults can be absorbed.
  const ProblemInstance inst = instance(6, 6, {module("a", 2, 2), module("b", 2, 2)});
  const Placement start(inst, {{1, 1, false}, {1, 3, false}});
  CostWeights w;
  w.beta_ft = 50.0;
  const AnnealOutcome out = anneal(inst, start, quick(1), w, true, MoveSet::displacements());
  ASSERT_TRUE(out.feasible);
  EXPECT_GT(out.cost.fti, 0.5);
}
