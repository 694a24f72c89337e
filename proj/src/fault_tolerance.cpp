#include "dmfb/fault_tolerance.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>

#include "dmfb/empty_rect.hpp"
#include "dmfb/error.hpp"

namespace dmfb {

namespace {

// Below this many evaluated cells the parallel region costs more than it saves.
constexpr long kParallelMinCells = 256;

void require_feasible(const Placement& p) {
  if (const long penalty = overlap_penalty(p); penalty != 0) {
    throw InfeasibleError("placement has " + std::to_string(penalty) +
                          " cells of forbidden overlap");
  }
}

void require_inside(const CellRect& region, Cell cell) {
  if (!region.contains(cell)) {
    throw std::out_of_range("cell (" + std::to_string(cell.row) + ", " + std::to_string(cell.col) +
                            ") lies outside the evaluated array");
  }
}

bool relocatable(const Placement& p, std::size_t module, OccupancyMatrix occupancy, Cell faulty) {
  occupancy.set(faulty.row - occupancy.origin().row + 1, faulty.col - occupancy.origin().col + 1);
  const std::vector<MaximalEmptyRect> rects = maximal_empty_rects(occupancy);
  const ModuleSpec& spec = p.spec(module);
  return can_accommodate(rects, spec.width_cells, spec.height_cells, spec.rotatable);
}

// Occupancy of each module's time-concurrent partners, fault not yet marked.
std::vector<OccupancyMatrix> partner_occupancy(const Placement& p, const CellRect& region) {
  std::vector<OccupancyMatrix> out;
  out.reserve(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    out.push_back(occupancy_for(p, i, std::nullopt, region));
  }
  return out;
}

bool covered_with(const Placement& p, const std::vector<OccupancyMatrix>& partners, Cell cell) {
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!p.footprint(i).contains(cell)) continue;
    if (!relocatable(p, i, partners[i], cell)) return false;
  }
  return true;
}

CoverageReport empty_report(const CellRect& region) {
  CoverageReport r;
  r.grid_rows = region.rows();
  r.grid_cols = region.cols();
  r.region = region;
  r.covered.assign(static_cast<std::size_t>(region.cell_count()), 0);
  return r;
}

void finish(CoverageReport& r) {
  r.k = 0;
  for (std::uint8_t c : r.covered) r.k += c;
  // An array with no cells has nothing that can fail.
  const long total = r.total_cells();
  r.fti = total == 0 ? 1.0 : static_cast<double>(r.k) / static_cast<double>(total);
}

}  // namespace

CellRect evaluated_region(const Placement& p, RelocationSpace space) {
  if (space == RelocationSpace::grid_bounds) {
    return {1, p.instance().grid.rows_max, 1, p.instance().grid.cols_max};
  }
  return array_area_cells(p).bounds;
}

bool is_covered(const Placement& p, Cell cell, RelocationSpace space) {
  const CellRect region = evaluated_region(p, space);
  require_inside(region, cell);
  require_feasible(p);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!p.footprint(i).contains(cell)) continue;
    if (!relocatable(p, i, occupancy_for(p, i, std::nullopt, region), cell)) return false;
  }
  return true;
}

bool brute_force_is_covered(const Placement& p, Cell cell, RelocationSpace space, long max_cells) {
  const CellRect region = evaluated_region(p, space);
  if (region.cell_count() > max_cells) {
    throw std::length_error("brute_force_is_covered: evaluated array of " +
                            std::to_string(region.cell_count()) + " cells exceeds the " +
                            std::to_string(max_cells) + "-cell bound");
  }
  require_inside(region, cell);
  require_feasible(p);

  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!p.footprint(i).contains(cell)) continue;
    const ModuleSpec& spec = p.spec(i);
    bool found = false;
    for (int rot = 0; rot < (spec.rotatable ? 2 : 1) && !found; ++rot) {
      for (int row = region.row_lo; row <= region.row_hi && !found; ++row) {
        for (int col = region.col_lo; col <= region.col_hi && !found; ++col) {
          const CellRect cand = footprint(spec, {row, col, rot == 1});
          if (!region.contains(cand) || cand.contains(cell)) continue;
          bool clear = true;
          for (std::size_t j = 0; j < p.size() && clear; ++j) {
            if (j == i || !time_overlap(spec, p.spec(j))) continue;
            clear = shared_cells(cand, p.footprint(j)) == 0;
          }
          found = clear;
        }
      }
    }
    if (!found) return false;
  }
  return true;
}

CoverageReport coverage_report(const Placement& p, RelocationSpace space) {
  require_feasible(p);
  const CellRect region = evaluated_region(p, space);
  CoverageReport report = empty_report(region);
  const std::vector<OccupancyMatrix> partners = partner_occupancy(p, region);
  const long total = report.total_cells();
  const int cols = region.cols();

#pragma omp parallel for schedule(dynamic, 8) if (total >= kParallelMinCells)
  for (long idx = 0; idx < total; ++idx) {
    const Cell cell{region.row_lo + static_cast<int>(idx / cols),
                    region.col_lo + static_cast<int>(idx % cols)};
    report.covered[static_cast<std::size_t>(idx)] = covered_with(p, partners, cell) ? 1 : 0;
  }

  finish(report);
  return report;
}

CoverageReport coverage_report_serial(const Placement& p, RelocationSpace space) {
  require_feasible(p);
  const CellRect region = evaluated_region(p, space);
  CoverageReport report = empty_report(region);
  const std::vector<OccupancyMatrix> partners = partner_occupancy(p, region);
  std::size_t idx = 0;
  for (int row = region.row_lo; row <= region.row_hi; ++row) {
    for (int col = region.col_lo; col <= region.col_hi; ++col) {
      report.covered[idx++] = covered_with(p, partners, {row, col}) ? 1 : 0;
    }
  }
  finish(report);
  return report;
}

CoverageReport fast_coverage_report(const Placement& p, RelocationSpace space) {
  require_feasible(p);
  const CellRect region = evaluated_region(p, space);
  CoverageReport report = empty_report(region);
  std::fill(report.covered.begin(), report.covered.end(), std::uint8_t{1});

  for (std::size_t i = 0; i < p.size(); ++i) {
    const ModuleSpec& spec = p.spec(i);
    const CellRect own = p.footprint(i);
    const OccupancyMatrix occupancy = occupancy_for(p, i, std::nullopt, region);

    // Intersection, in local coordinates, of the cores of every
    // (rectangle, orientation) pair that fits the module.
    CellRect blocked{1, region.rows(), 1, region.cols()};
    for (const MaximalEmptyRect& r : maximal_empty_rects(occupancy)) {
      for (int rot = 0; rot < (spec.rotatable ? 2 : 1); ++rot) {
        const int rows = rot ? spec.width_cells : spec.height_cells;
        const int cols = rot ? spec.height_cells : spec.width_cells;
        if (r.height() < rows || r.width() < cols) continue;
        const CellRect core{r.top - rows + 1, r.bottom + rows - 1, r.right - cols + 1,
                            r.left + cols - 1};
        blocked = {std::max(blocked.row_lo, core.row_lo), std::min(blocked.row_hi, core.row_hi),
                   std::max(blocked.col_lo, core.col_lo), std::min(blocked.col_hi, core.col_hi)};
      }
    }

    for (int row = std::max(own.row_lo, region.row_lo); row <= std::min(own.row_hi, region.row_hi);
         ++row) {
      for (int col = std::max(own.col_lo, region.col_lo);
           col <= std::min(own.col_hi, region.col_hi); ++col) {
        const Cell local{row - region.row_lo + 1, col - region.col_lo + 1};
        if (blocked.contains(local)) {
          report.covered[static_cast<std::size_t>(local.row - 1) * region.cols() +
                         static_cast<std::size_t>(local.col - 1)] = 0;
        }
      }
    }
  }

  finish(report);
  return report;
}

std::optional<PlacedModule> relocation_for(const Placement& p, std::size_t module, Cell faulty,
                                           RelocationSpace space) {
  if (module >= p.size()) throw std::out_of_range("relocation_for: module index out of range");
  if (!p.footprint(module).contains(faulty)) {
    throw std::invalid_argument("relocation_for: module " + p.spec(module).id +
                                " does not contain the faulty cell");
  }
  const CellRect region = evaluated_region(p, space);
  const OccupancyMatrix occupancy = occupancy_for(p, module, faulty, region);
  const ModuleSpec& spec = p.spec(module);

  const std::vector<MaximalEmptyRect> rects = maximal_empty_rects(occupancy);
  std::optional<std::pair<int, int>> corner;
  for (const MaximalEmptyRect& r : rects) {
    const MaximalEmptyRect one[] = {r};
    if (!can_accommodate(one, spec.width_cells, spec.height_cells, spec.rotatable)) continue;
    corner = corner ? std::min(*corner, std::pair(r.bottom, r.left)) : std::pair(r.bottom, r.left);
  }
  if (!corner) return std::nullopt;

  // Several maximal rectangles may share the chosen corner; prefer the
  // unrotated orientation if any of them fits it.
  bool upright = false;
  for (const MaximalEmptyRect& r : rects) {
    if (std::pair(r.bottom, r.left) != *corner) continue;
    upright = upright || (r.width() >= spec.width_cells && r.height() >= spec.height_cells);
  }
  return PlacedModule{region.row_lo + corner->first - 1, region.col_lo + corner->second - 1,
                      !upright};
}

}  // namespace dmfb
