#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dmfb/annealer.hpp"
#include "dmfb/placement.hpp"

namespace dmfb {

/// One optimizer outcome. `placement` refers to the instance passed in,
/// which must outlive the result.
struct StageResult {
  std::string stage;  // "greedy", "area", "two-stage"
  Placement placement;
  AreaSummary area;
  double area_mm2 = 0.0;
  long k = 0;
  double fti = 0.0;
  double elapsed_s = 0.0;
  std::uint64_t seed = 0;
  AnnealParams params;   // resolved; unused by greedy
  CostWeights weights;   // resolved; unused by greedy
  double t_ltsa = 0.0;   // two-stage only
  double beta_ft = 0.0;  // two-stage only

  long cell_count() const { return area.cell_count; }
};

/// Descending footprint area (ties by id); each module goes to the
/// lexicographically smallest (row, col) where it fits without overlapping a
/// time-concurrent module, trying the unrotated orientation first.
/// Deterministic. Throws InfeasibleError when some module finds no spot.
StageResult greedy_baseline(const ProblemInstance& instance);

/// Area-only annealing from the constructive start with all move kinds.
StageResult optimize_area(const ProblemInstance& instance, const AnnealParams& params);

/// Area annealing followed by low-temperature refinement of
/// alpha x area - beta x k with displacement moves only. `t_ltsa` <= 0
/// selects t_initial / 100. Throws std::invalid_argument when beta <= 0.
StageResult optimize_two_stage(const ProblemInstance& instance, const AnnealParams& params,
                               const CostWeights& weights, double t_ltsa = 0.0);

/// optimize_two_stage for each beta with seed = params.rng_seed + index.
/// Runs the betas in parallel; results follow input order.
std::vector<StageResult> beta_sweep(const ProblemInstance& instance, const AnnealParams& params,
                                    std::span<const double> betas, const CostWeights& base = {},
                                    double t_ltsa = 0.0);

}  // namespace dmfb
