#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "dmfb/placement.hpp"
#include "dmfb/problem.hpp"

namespace dmfb::testing {

inline ModuleSpec module(std::string id, int width, int height, double start = 0.0,
                         double duration = 1.0, bool rotatable = true) {
  return ModuleSpec{std::move(id), width, height, start, duration, rotatable};
}

inline ProblemInstance instance(int rows, int cols, std::vector<ModuleSpec> mods) {
  return ProblemInstance{GridSpec{rows, cols, 1.5}, std::move(mods)};
}

// 7x9 array, two concurrent fixed-orientation modules. M2 (7x7) cannot
// move; M1 (5 tall, 2 wide) can slide down to rows 1-5 only when the fault
// is in rows 6-7. Covered: the 4 unused cells plus M1's top 4 cells.
inline ProblemInstance eight_covered_instance() {
  return instance(7, 9, {module("M1", 2, 5, 0, 1, false), module("M2", 7, 7, 0, 1, false)});
}
inline std::vector<PlacedModule> eight_covered_layout() { return {{3, 1, false}, {1, 3, false}}; }

// 7x11 array; the 6x6 module has a 3x5 block of cells no fault may hit,
// everything else is covered: k = 77 - 15 = 62.
inline ProblemInstance sixty_two_covered_instance() {
  return instance(7, 11, {module("M1", 6, 6, 0, 1, false), module("M2", 2, 4, 0, 1, false)});
}
inline std::vector<PlacedModule> sixty_two_covered_layout() {
  return {{1, 1, false}, {4, 10, false}};
}

// A 7x11 overlap-free layout of the bundled PCR fixture (default schedule).
inline std::vector<PlacedModule> pcr_7x11_layout() {
  return {{1, 1, false}, {1, 5, false}, {1, 1, false}, {1, 9, false},
          {1, 5, false}, {1, 1, false}, {2, 1, false}};
}

inline OccupancyMatrix random_matrix(std::mt19937_64& rng, int max_side) {
  std::uniform_int_distribution<int> side(1, max_side);
  const int rows = side(rng);
  const int cols = side(rng);
  // Densities from nearly empty to nearly full.
  const double density = std::uniform_real_distribution<double>(0.0, 0.9)(rng);
  std::bernoulli_distribution blocked(density);
  OccupancyMatrix m(rows, cols);
  for (int r = 1; r <= rows; ++r) {
    for (int c = 1; c <= cols; ++c) m.set(r, c, blocked(rng));
  }
  return m;
}

// Random instance plus a feasible placement of it on a grid of at most
// max_side x max_side. Start times come from a small set so that both
// concurrent and time-disjoint pairs are common.
struct RandomCase {
  ProblemInstance inst;
  std::vector<PlacedModule> placed;
};

inline RandomCase random_feasible_case(std::mt19937_64& rng, int max_side, int max_modules) {
  std::uniform_int_distribution<int> side(2, max_side);
  for (;;) {
    RandomCase out;
    out.inst.grid = GridSpec{side(rng), side(rng), 1.5};
    const int n = std::uniform_int_distribution<int>(1, max_modules)(rng);
    const int max_dim = std::max(1, std::min(4, std::min(out.inst.grid.rows_max,
                                                         out.inst.grid.cols_max)));
    std::uniform_int_distribution<int> dim(1, max_dim);
    std::uniform_int_distribution<int> start(0, 3);
    std::uniform_int_distribution<int> dur(1, 3);
    std::bernoulli_distribution coin(0.5);
    for (int i = 0; i < n; ++i) {
      out.inst.modules.push_back(module("M" + std::to_string(i + 1), dim(rng), dim(rng),
                                        start(rng), dur(rng), coin(rng)));
    }
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) {
      const ModuleSpec& m = out.inst.modules[static_cast<std::size_t>(i)];
      // Up to 50 tries for a spot that avoids earlier concurrent modules.
      bool placed = false;
      for (int attempt = 0; attempt < 50 && !placed; ++attempt) {
        const bool rot = m.rotatable && coin(rng);
        const int rows = rot ? m.width_cells : m.height_cells;
        const int cols = rot ? m.height_cells : m.width_cells;
        if (rows > out.inst.grid.rows_max || cols > out.inst.grid.cols_max) continue;
        const PlacedModule at{
            std::uniform_int_distribution<int>(1, out.inst.grid.rows_max - rows + 1)(rng),
            std::uniform_int_distribution<int>(1, out.inst.grid.cols_max - cols + 1)(rng), rot};
        const CellRect f = footprint(m, at);
        bool clash = false;
        for (int j = 0; j < i && !clash; ++j) {
          const auto sj = static_cast<std::size_t>(j);
          clash = time_overlap(m, out.inst.modules[sj]) &&
                  shared_cells(f, footprint(out.inst.modules[sj], out.placed[sj])) > 0;
        }
        if (!clash) {
          out.placed.push_back(at);
          placed = true;
        }
      }
      ok = placed;
    }
    if (ok) return out;
  }
}

}  // namespace dmfb::testing
