#include <gtest/gtest.h>

#include <random>

#include "dmfb/placement.hpp"
#include "support.hpp"

using namespace dmfb;
using dmfb::testing::instance;
using dmfb::testing::module;

TEST(TimeOverlap, HalfOpenIntervals) {
  EXPECT_FALSE(time_overlap(module("a", 1, 1, 0, 10), module("b", 1, 1, 10, 5)));
  EXPECT_TRUE(time_overlap(module("a", 1, 1, 0, 10), module("b", 1, 1, 5, 6)));
  const ModuleSpec a = module("a", 1, 1, 3, 2);
  EXPECT_TRUE(time_overlap(a, a));
}

TEST(TimeOverlap, Symmetric) {
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<int> t(0, 10);
  for (int i = 0; i < 500; ++i) {
    const ModuleSpec a = module("a", 1, 1, t(rng), 1 + t(rng));
    const ModuleSpec b = module("b", 1, 1, t(rng), 1 + t(rng));
    EXPECT_EQ(time_overlap(a, b), time_overlap(b, a));
    // Direct interval arithmetic.
    const bool want = a.start_time_s < b.end_time_s() && b.start_time_s < a.end_time_s();
    EXPECT_EQ(time_overlap(a, b), want);
  }
}

TEST(TimeOverlap, AsapFixtureM1M3Concurrent) {
  const ProblemInstance inst = pcr_fixture(PcrSchedule::asap);
  EXPECT_TRUE(time_overlap(inst.modules[0], inst.modules[2]));
  const ProblemInstance staggered = pcr_fixture();
  EXPECT_FALSE(time_overlap(staggered.modules[0], staggered.modules[2]));
}

TEST(Footprint, RotationSwapsExtent) {
  const ModuleSpec m = module("m", 3, 6);
  EXPECT_EQ(footprint(m, {2, 3, false}), (CellRect{2, 7, 3, 5}));
  EXPECT_EQ(footprint(m, {2, 3, true}), (CellRect{2, 4, 3, 8}));
}

TEST(OverlapPenalty, Examples) {
  const ProblemInstance disjoint = instance(4, 4, {module("a", 2, 2, 0, 1), module("b", 2, 2, 1, 1)});
  EXPECT_EQ(overlap_penalty(Placement(disjoint, {{1, 1, false}, {1, 1, false}})), 0);

  const ProblemInstance together = instance(4, 4, {module("a", 2, 2, 0, 2), module("b", 2, 2, 1, 2)});
  const Placement strip(together, {{1, 1, false}, {2, 1, false}});
  EXPECT_EQ(overlap_penalty(strip), 2);
  EXPECT_FALSE(is_feasible(strip));
}

TEST(OverlapPenalty, FrozenPcrLayoutFeasible) {
  const ProblemInstance inst = pcr_fixture();
  EXPECT_EQ(overlap_penalty(Placement(inst, dmfb::testing::pcr_7x11_layout())), 0);
}

TEST(Area, Examples) {
  const ProblemInstance one = instance(10, 10, {module("m", 4, 4)});
  const AreaSummary a = array_area_cells(Placement(one, {{5, 3, false}}));
  EXPECT_EQ(a.rows_used, 4);
  EXPECT_EQ(a.cols_used, 4);
  EXPECT_EQ(a.cell_count, 16);

  const ProblemInstance k8 = dmfb::testing::eight_covered_instance();
  const AreaSummary b = array_area_cells(Placement(k8, dmfb::testing::eight_covered_layout()));
  EXPECT_EQ(b.rows_used, 7);
  EXPECT_EQ(b.cols_used, 9);
  EXPECT_EQ(b.cell_count, 63);

  const ProblemInstance pcr = pcr_fixture();
  const AreaSummary c = array_area_cells(Placement(pcr, dmfb::testing::pcr_7x11_layout()));
  EXPECT_EQ(c.rows_used, 7);
  EXPECT_EQ(c.cols_used, 11);
  EXPECT_EQ(c.cell_count, 77);
}

TEST(Area, Millimetres) {
  EXPECT_DOUBLE_EQ(area_mm2(84, 1.5), 189.0);
  EXPECT_DOUBLE_EQ(area_mm2(63, 1.5), 141.75);
  EXPECT_DOUBLE_EQ(area_mm2(0, 1.5), 0.0);
}

TEST(Placement, NormalizedAnchorsAtOrigin) {
  const ProblemInstance inst = instance(10, 10, {module("a", 2, 2), module("b", 3, 1, 5, 1)});
  const Placement p(inst, {{4, 5, false}, {6, 6, true}});
  const Placement n = normalized(p);
  EXPECT_EQ(array_area_cells(n).bounds.row_lo, 1);
  EXPECT_EQ(array_area_cells(n).bounds.col_lo, 1);
  EXPECT_EQ(array_area_cells(n).cell_count, array_area_cells(p).cell_count);
  EXPECT_EQ(n[0], (PlacedModule{1, 1, false}));
  EXPECT_EQ(n[1], (PlacedModule{3, 2, true}));
}

TEST(Placement, IndexOfAndCore) {
  const ProblemInstance inst = instance(3, 3, {module("a", 2, 2), module("b", 1, 1)});
  Placement p(inst, {{1, 1, false}, {3, 3, false}});
  EXPECT_EQ(p.index_of("b"), 1u);
  EXPECT_THROW((void)p.index_of("zz"), std::out_of_range);
  EXPECT_TRUE(p.within_core());
  p[0] = {3, 1, false};
  EXPECT_FALSE(p.within_core());
}

TEST(Occupancy, SingleModuleRemovesTarget) {
  const ProblemInstance inst = instance(4, 4, {module("m", 2, 2)});
  const Placement p(inst, {{1, 1, false}});
  const OccupancyMatrix empty = occupancy_for(p, 0, std::nullopt);
  EXPECT_EQ(empty.rows(), 4);
  EXPECT_EQ(empty.count(), 0);

  const OccupancyMatrix faulty = occupancy_for(p, 0, Cell{1, 1});
  EXPECT_EQ(faulty.count(), 1);
  EXPECT_TRUE(faulty.occupied(1, 1));
}

TEST(Occupancy, PcrConcurrentModulesOnly) {
  for (PcrSchedule s : {PcrSchedule::staggered, PcrSchedule::asap}) {
    const ProblemInstance inst = pcr_fixture(s);
    Placement p = Placement(inst, std::vector<PlacedModule>(7));
    // Spread modules out so every footprint is distinct.
    for (std::size_t i = 0; i < 7; ++i) p[i] = {1 + static_cast<int>(i) * 5, 1 + static_cast<int>(i) * 3, false};
    const std::size_t m1 = p.index_of("M1");
    const OccupancyMatrix occ = occupancy_for(p, "M1", std::nullopt);

    const double lo = inst.modules[m1].start_time_s;
    const double hi = inst.modules[m1].end_time_s();
    for (int r = 1; r <= inst.grid.rows_max; ++r) {
      for (int c = 1; c <= inst.grid.cols_max; ++c) {
        bool want = false;
        for (std::size_t j = 0; j < 7; ++j) {
          if (j == m1) continue;
          const ModuleSpec& o = inst.modules[j];
          const bool concurrent = o.start_time_s < hi && lo < o.end_time_s();
          want = want || (concurrent && p.footprint(j).contains(Cell{r, c}));
        }
        ASSERT_EQ(occ.occupied(r, c), want) << r << "," << c;
      }
    }
  }
}

TEST(Occupancy, ExcludesTargetAndIsMonotone) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    auto c = dmfb::testing::random_feasible_case(rng, 10, 5);
    const Placement p(c.inst, c.placed);
    for (std::size_t t = 0; t < p.size(); ++t) {
      const OccupancyMatrix occ = occupancy_for(p, t, std::nullopt);
      // Cells only the target uses stay free.
      const CellRect own = p.footprint(t);
      for (int r = own.row_lo; r <= own.row_hi; ++r) {
        for (int col = own.col_lo; col <= own.col_hi; ++col) {
          bool other = false;
          for (std::size_t j = 0; j < p.size(); ++j) {
            other = other || (j != t && time_overlap(p.spec(t), p.spec(j)) &&
                              p.footprint(j).contains(Cell{r, col}));
          }
          if (!other) EXPECT_FALSE(occ.occupied(r, col));
        }
      }
      // Adding a fault only adds ones.
      const Cell fault{1 + static_cast<int>(rng() % static_cast<unsigned>(c.inst.grid.rows_max)),
                       1 + static_cast<int>(rng() % static_cast<unsigned>(c.inst.grid.cols_max))};
      const OccupancyMatrix with = occupancy_for(p, t, fault);
      for (int r = 1; r <= occ.rows(); ++r) {
        for (int col = 1; col <= occ.cols(); ++col) {
          if (occ.occupied(r, col)) EXPECT_TRUE(with.occupied(r, col));
        }
      }
      EXPECT_TRUE(with.occupied(fault.row, fault.col));
    }
  }
}

TEST(Occupancy, RegionUsesLocalIndexing) {
  const ProblemInstance inst = instance(6, 6, {module("a", 2, 2), module("b", 1, 1)});
  const Placement p(inst, {{3, 3, false}, {4, 5, false}});
  const OccupancyMatrix occ = occupancy_for(p, 0, std::nullopt, CellRect{3, 4, 3, 5});
  EXPECT_EQ(occ.rows(), 2);
  EXPECT_EQ(occ.cols(), 3);
  EXPECT_EQ(occ.origin(), (Cell{3, 3}));
  EXPECT_TRUE(occ.occupied(2, 3));
  EXPECT_TRUE(occ.occupied_at(Cell{4, 5}));
  EXPECT_EQ(occ.count(), 1);
}
