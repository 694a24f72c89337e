#include "dmfb/placement.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace dmfb {

long shared_cells(const CellRect& a, const CellRect& b) {
  const CellRect overlap{std::max(a.row_lo, b.row_lo), std::min(a.row_hi, b.row_hi),
                         std::max(a.col_lo, b.col_lo), std::min(a.col_hi, b.col_hi)};
  return overlap.cell_count();
}

CellRect footprint(const ModuleSpec& spec, const PlacedModule& at) {
  const int rows = at.rotated ? spec.width_cells : spec.height_cells;
  const int cols = at.rotated ? spec.height_cells : spec.width_cells;
  return {at.row, at.row + rows - 1, at.col, at.col + cols - 1};
}

bool time_overlap(const ModuleSpec& a, const ModuleSpec& b) {
  return a.start_time_s < b.end_time_s() && b.start_time_s < a.end_time_s();
}

Placement::Placement(const ProblemInstance& instance, std::vector<PlacedModule> placed)
    : instance_(&instance), placed_(std::move(placed)) {
  if (placed_.size() != instance.modules.size()) {
    throw std::invalid_argument("placement: expected " + std::to_string(instance.modules.size()) +
                                " modules, got " + std::to_string(placed_.size()));
  }
}

std::size_t Placement::index_of(std::string_view id) const {
  if (auto idx = instance_->find(id)) return *idx;
  throw std::out_of_range("unknown module id '" + std::string(id) + "'");
}

bool Placement::within_core() const {
  const CellRect core{1, instance_->grid.rows_max, 1, instance_->grid.cols_max};
  for (std::size_t i = 0; i < placed_.size(); ++i) {
    if (!core.contains(footprint(i))) return false;
  }
  return true;
}

long overlap_penalty(const Placement& p) {
  long penalty = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const CellRect a = p.footprint(i);
    for (std::size_t j = i + 1; j < p.size(); ++j) {
      if (!time_overlap(p.spec(i), p.spec(j))) continue;
      penalty += shared_cells(a, p.footprint(j));
    }
  }
  return penalty;
}

AreaSummary array_area_cells(const Placement& p) {
  AreaSummary out;
  if (p.size() == 0) return out;
  CellRect box = p.footprint(0);
  for (std::size_t i = 1; i < p.size(); ++i) {
    const CellRect f = p.footprint(i);
    box.row_lo = std::min(box.row_lo, f.row_lo);
    box.row_hi = std::max(box.row_hi, f.row_hi);
    box.col_lo = std::min(box.col_lo, f.col_lo);
    box.col_hi = std::max(box.col_hi, f.col_hi);
  }
  out.rows_used = box.rows();
  out.cols_used = box.cols();
  out.cell_count = box.cell_count();
  out.bounds = box;
  return out;
}

Placement normalized(const Placement& p) {
  const CellRect box = array_area_cells(p).bounds;
  std::vector<PlacedModule> shifted(p.modules().begin(), p.modules().end());
  for (PlacedModule& m : shifted) {
    m.row -= box.row_lo - 1;
    m.col -= box.col_lo - 1;
  }
  return Placement(p.instance(), std::move(shifted));
}

OccupancyMatrix::OccupancyMatrix(int rows, int cols, Cell origin)
    : rows_(rows), cols_(cols), origin_(origin) {
  if (rows < 1 || cols < 1) throw std::invalid_argument("occupancy matrix must be non-empty");
  cells_.assign(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), 0);
}

void OccupancyMatrix::fill(const CellRect& grid_rect) {
  const CellRect r = region();
  const int r0 = std::max(grid_rect.row_lo, r.row_lo);
  const int r1 = std::min(grid_rect.row_hi, r.row_hi);
  const int c0 = std::max(grid_rect.col_lo, r.col_lo);
  const int c1 = std::min(grid_rect.col_hi, r.col_hi);
  for (int row = r0; row <= r1; ++row) {
    for (int col = c0; col <= c1; ++col) {
      set(row - origin_.row + 1, col - origin_.col + 1);
    }
  }
}

bool OccupancyMatrix::occupied_at(Cell c) const {
  if (!region().contains(c)) return false;
  return occupied(c.row - origin_.row + 1, c.col - origin_.col + 1);
}

long OccupancyMatrix::count() const {
  return std::count(cells_.begin(), cells_.end(), std::uint8_t{1});
}

OccupancyMatrix occupancy_for(const Placement& p, std::size_t target, std::optional<Cell> faulty,
                              const CellRect& region) {
  if (target >= p.size()) throw std::out_of_range("occupancy_for: module index out of range");
  OccupancyMatrix m(region.rows(), region.cols(), {region.row_lo, region.col_lo});
  const ModuleSpec& t = p.spec(target);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i == target || !time_overlap(t, p.spec(i))) continue;
    m.fill(p.footprint(i));
  }
  if (faulty && region.contains(*faulty)) {
    m.set(faulty->row - region.row_lo + 1, faulty->col - region.col_lo + 1);
  }
  return m;
}

OccupancyMatrix occupancy_for(const Placement& p, std::size_t target, std::optional<Cell> faulty) {
  const GridSpec& g = p.instance().grid;
  return occupancy_for(p, target, faulty, CellRect{1, g.rows_max, 1, g.cols_max});
}

OccupancyMatrix occupancy_for(const Placement& p, std::string_view target,
                              std::optional<Cell> faulty) {
  return occupancy_for(p, p.index_of(target), faulty);
}

}  // namespace dmfb
