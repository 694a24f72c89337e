#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "dmfb/problem.hpp"

namespace dmfb {

/// Grid cell, 1-based, with (1, 1) at the bottom-left. Rows grow upward.
struct Cell {
  int row = 1;
  int col = 1;

  friend auto operator<=>(const Cell&, const Cell&) = default;
};

/// Inclusive axis-aligned block of cells.
struct CellRect {
  int row_lo = 1;
  int row_hi = 0;
  int col_lo = 1;
  int col_hi = 0;

  int rows() const { return row_hi - row_lo + 1; }
  int cols() const { return col_hi - col_lo + 1; }
  bool empty() const { return row_hi < row_lo || col_hi < col_lo; }
  long cell_count() const { return empty() ? 0 : static_cast<long>(rows()) * cols(); }
  bool contains(Cell c) const {
    return c.row >= row_lo && c.row <= row_hi && c.col >= col_lo && c.col <= col_hi;
  }
  bool contains(const CellRect& o) const {
    return o.row_lo >= row_lo && o.row_hi <= row_hi && o.col_lo >= col_lo && o.col_hi <= col_hi;
  }

  friend bool operator==(const CellRect&, const CellRect&) = default;
};

/// Number of cells shared by two blocks.
long shared_cells(const CellRect& a, const CellRect& b);

/// Position of one module: bottom-left cell and orientation. When `rotated`
/// the footprint is width_cells rows by height_cells columns.
struct PlacedModule {
  int row = 1;
  int col = 1;
  bool rotated = false;

  friend bool operator==(const PlacedModule&, const PlacedModule&) = default;
};

CellRect footprint(const ModuleSpec& spec, const PlacedModule& at);

/// True iff [start, start + duration) of the two modules intersect.
bool time_overlap(const ModuleSpec& a, const ModuleSpec& b);

/// A full layout: one PlacedModule per module of the referenced instance,
/// in instance order. The instance must outlive the placement.
class Placement {
 public:
  Placement(const ProblemInstance& instance, std::vector<PlacedModule> placed);

  const ProblemInstance& instance() const { return *instance_; }
  std::size_t size() const { return placed_.size(); }

  const PlacedModule& operator[](std::size_t i) const { return placed_[i]; }
  PlacedModule& operator[](std::size_t i) { return placed_[i]; }
  std::span<const PlacedModule> modules() const { return placed_; }

  const ModuleSpec& spec(std::size_t i) const { return instance_->modules[i]; }
  CellRect footprint(std::size_t i) const { return dmfb::footprint(spec(i), placed_[i]); }

  /// Index of module `id`; throws std::out_of_range for unknown ids.
  std::size_t index_of(std::string_view id) const;

  /// Every footprint lies within [1, rows_max] x [1, cols_max].
  bool within_core() const;

  friend bool operator==(const Placement& a, const Placement& b) {
    return a.instance_ == b.instance_ && a.placed_ == b.placed_;
  }

 private:
  const ProblemInstance* instance_;
  std::vector<PlacedModule> placed_;
};

/// Sum over time-concurrent module pairs of the cells their footprints share.
long overlap_penalty(const Placement& p);

inline bool is_feasible(const Placement& p) { return overlap_penalty(p) == 0; }

struct AreaSummary {
  int rows_used = 0;
  int cols_used = 0;
  long cell_count = 0;
  CellRect bounds;  // bounding block in grid coordinates
};

/// Smallest axis-aligned block containing every footprint.
AreaSummary array_area_cells(const Placement& p);

inline double area_mm2(long cell_count, double pitch_mm) {
  return static_cast<double>(cell_count) * pitch_mm * pitch_mm;
}

/// Copy of `p` translated so that its bounding block starts at (1, 1).
Placement normalized(const Placement& p);

/// 0/1 snapshot of a block of the grid. Indexing is local and 1-based:
/// local (1, 1) is grid cell `origin()`.
class OccupancyMatrix {
 public:
  OccupancyMatrix(int rows, int cols, Cell origin = {1, 1});

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Cell origin() const { return origin_; }
  CellRect region() const {
    return {origin_.row, origin_.row + rows_ - 1, origin_.col, origin_.col + cols_ - 1};
  }

  bool occupied(int row, int col) const { return cells_[index(row, col)] != 0; }
  void set(int row, int col, bool value = true) { cells_[index(row, col)] = value ? 1 : 0; }

  /// Marks every cell of a grid-coordinate block, clipped to the region.
  void fill(const CellRect& grid_rect);
  /// Grid-coordinate access; false outside the region.
  bool occupied_at(Cell grid_cell) const;

  long count() const;

  friend bool operator==(const OccupancyMatrix&, const OccupancyMatrix&) = default;

 private:
  std::size_t index(int row, int col) const {
    return static_cast<std::size_t>(row - 1) * static_cast<std::size_t>(cols_) +
           static_cast<std::size_t>(col - 1);
  }

  int rows_;
  int cols_;
  Cell origin_;
  std::vector<std::uint8_t> cells_;
};

/// Encoding used for relocating `target`: cells of every module that is
/// time-concurrent with it (target itself excluded) plus `faulty` are 1,
/// over the given grid-coordinate region.
OccupancyMatrix occupancy_for(const Placement& p, std::size_t target, std::optional<Cell> faulty,
                              const CellRect& region);
/// Same, over the full grid bounds.
OccupancyMatrix occupancy_for(const Placement& p, std::size_t target, std::optional<Cell> faulty);
/// By module id; throws std::out_of_range for unknown ids.
OccupancyMatrix occupancy_for(const Placement& p, std::string_view target,
                              std::optional<Cell> faulty);

}  // namespace dmfb
