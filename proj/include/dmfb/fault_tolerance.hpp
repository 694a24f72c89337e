#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "dmfb/placement.hpp"

namespace dmfb {

/// Where a faulty module may be moved, and which block of cells the
/// fault-tolerance index is computed over.
enum class RelocationSpace {
  /// The placement's bounding array (the fabricated m x n array). Default.
  bounding_array,
  /// The full optimizer bounds rows_max x cols_max.
  grid_bounds,
};

/// Grid-coordinate block evaluated under `space`.
CellRect evaluated_region(const Placement& p, RelocationSpace space);

struct CoverageReport {
  int grid_rows = 0;
  int grid_cols = 0;
  CellRect region;                    // grid coordinates of the evaluated array
  std::vector<std::uint8_t> covered;  // row-major, local row 1 (bottom) first
  long k = 0;
  double fti = 0.0;

  bool covered_at(Cell local) const {
    return covered[static_cast<std::size_t>(local.row - 1) * static_cast<std::size_t>(grid_cols) +
                   static_cast<std::size_t>(local.col - 1)] != 0;
  }
  long total_cells() const { return static_cast<long>(grid_rows) * grid_cols; }
};

/// A cell (grid coordinates) is covered when no module uses it, or when
/// every module containing it can be moved into a maximal empty rectangle
/// of the evaluated array that avoids the cell and every module active at
/// the same time. Throws std::out_of_range when the cell lies outside the
/// evaluated array and InfeasibleError when `p` has forbidden overlaps.
bool is_covered(const Placement& p, Cell cell,
                RelocationSpace space = RelocationSpace::bounding_array);

/// Reference check by exhaustive (row, col, orientation) scan. Throws
/// std::length_error when the evaluated array exceeds `max_cells`.
bool brute_force_is_covered(const Placement& p, Cell cell,
                            RelocationSpace space = RelocationSpace::bounding_array,
                            long max_cells = 400);

/// Coverage of every cell of the evaluated array, cells evaluated in
/// parallel. Throws InfeasibleError for infeasible placements.
CoverageReport coverage_report(const Placement& p,
                               RelocationSpace space = RelocationSpace::bounding_array);

/// Single-threaded reference of coverage_report; identical output.
CoverageReport coverage_report_serial(const Placement& p,
                                      RelocationSpace space = RelocationSpace::bounding_array);

/// Same report from one maximal-empty-rectangle pass per module instead of
/// one per (cell, module). For a module M, every M-sized position inside a
/// fault-free maximal rectangle r contains the cells of a fixed block (the
/// core of r). A fault leaves M unrelocatable exactly when it lies in the
/// core of every rectangle that accommodates M, and that intersection is a
/// single block. Used inside the annealer's cost.
CoverageReport fast_coverage_report(const Placement& p,
                                    RelocationSpace space = RelocationSpace::bounding_array);

/// New position for `module` when `faulty` (grid coordinates) fails. The
/// chosen rectangle is the accommodating maximal empty rectangle with the
/// smallest (bottom, left); the module goes to its bottom-left corner,
/// unrotated whenever that orientation fits. Throws std::invalid_argument
/// when the module does not contain the cell.
std::optional<PlacedModule> relocation_for(const Placement& p, std::size_t module, Cell faulty,
                                           RelocationSpace space = RelocationSpace::bounding_array);

}  // namespace dmfb
