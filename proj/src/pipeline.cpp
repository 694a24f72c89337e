#include "dmfb/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <exception>
#include <numeric>
#include <optional>
#include <stdexcept>

#include "dmfb/error.hpp"
#include "dmfb/fault_tolerance.hpp"

namespace dmfb {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

StageResult summarize(std::string stage, const Placement& p, std::uint64_t seed) {
  if (!is_feasible(p)) {
    throw InfeasibleError(stage + ": optimizer returned a placement with forbidden overlap");
  }
  // Report with the bounding array anchored at (1, 1); area and coverage are
  // translation invariant.
  Placement anchored = normalized(p);
  const CoverageReport report = coverage_report(anchored);
  const AreaSummary area = array_area_cells(anchored);
  const double mm2 = area_mm2(area.cell_count, p.instance().grid.pitch_mm);
  return StageResult{std::move(stage), std::move(anchored), area, mm2, report.k, report.fti,
                     0.0, seed, AnnealParams{}, CostWeights{}, 0.0, 0.0};
}

bool fits_free(const Placement& partial, const std::vector<bool>& placed, std::size_t module,
               const CellRect& cand) {
  for (std::size_t j = 0; j < partial.size(); ++j) {
    if (!placed[j] || !time_overlap(partial.spec(module), partial.spec(j))) continue;
    if (shared_cells(cand, partial.footprint(j)) != 0) return false;
  }
  return true;
}

}  // namespace

StageResult greedy_baseline(const ProblemInstance& instance) {
  const auto t0 = Clock::now();
  const GridSpec& g = instance.grid;
  const CellRect core{1, g.rows_max, 1, g.cols_max};

  std::vector<std::size_t> order(instance.modules.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const ModuleSpec& ma = instance.modules[a];
    const ModuleSpec& mb = instance.modules[b];
    if (ma.cell_count() != mb.cell_count()) return ma.cell_count() > mb.cell_count();
    return ma.id < mb.id;
  });

  Placement p(instance, std::vector<PlacedModule>(instance.modules.size()));
  std::vector<bool> placed(instance.modules.size(), false);

  for (std::size_t m : order) {
    const ModuleSpec& spec = instance.modules[m];
    std::optional<PlacedModule> spot;
    for (int row = 1; row <= g.rows_max && !spot; ++row) {
      for (int col = 1; col <= g.cols_max && !spot; ++col) {
        for (bool rotated : {false, true}) {
          if (rotated && !spec.rotatable) continue;
          const PlacedModule at{row, col, rotated};
          const CellRect cand = footprint(spec, at);
          if (core.contains(cand) && fits_free(p, placed, m, cand)) {
            spot = at;
            break;
          }
        }
      }
    }
    if (!spot) {
      throw InfeasibleError("greedy: no free position for module " + spec.id + " within " +
                            std::to_string(g.rows_max) + "x" + std::to_string(g.cols_max));
    }
    p[m] = *spot;
    placed[m] = true;
  }

  StageResult r = summarize("greedy", p, 0);
  r.elapsed_s = seconds_since(t0);
  return r;
}

StageResult optimize_area(const ProblemInstance& instance, const AnnealParams& params) {
  const auto t0 = Clock::now();
  const AnnealParams resolved = params.resolve(instance);
  const CostWeights weights = CostWeights{1.0, 0.0, 0.0}.resolve(instance);
  const AnnealOutcome out = anneal(instance, initial_placement(instance), resolved, weights,
                                   /*with_ft=*/false, MoveSet::all());
  if (!out.feasible) {
    throw InfeasibleError("area annealing visited no overlap-free placement; enlarge the grid");
  }
  StageResult r = summarize("area", out.placement, resolved.rng_seed);
  r.params = resolved;
  r.weights = weights;
  r.elapsed_s = seconds_since(t0);
  return r;
}

StageResult optimize_two_stage(const ProblemInstance& instance, const AnnealParams& params,
                               const CostWeights& weights, double t_ltsa) {
  if (!(weights.beta_ft > 0.0)) {
    throw std::invalid_argument("two-stage optimization requires beta > 0");
  }
  const auto t0 = Clock::now();
  const AnnealParams resolved = params.resolve(instance);
  const CostWeights resolved_weights = weights.resolve(instance);

  const StageResult first = optimize_area(instance, resolved);

  AnnealParams low = resolved;
  low.t_initial = t_ltsa > 0.0 ? t_ltsa : resolved.t_initial / 100.0;
  const AnnealOutcome out = anneal(instance, first.placement, low, resolved_weights,
                                   /*with_ft=*/true, MoveSet::displacements());
  if (!out.feasible) {
    throw InfeasibleError("refinement visited no overlap-free placement");
  }

  StageResult r = summarize("two-stage", out.placement, resolved.rng_seed);
  r.params = resolved;
  r.weights = resolved_weights;
  r.t_ltsa = low.t_initial;
  r.beta_ft = resolved_weights.beta_ft;
  r.elapsed_s = seconds_since(t0);
  return r;
}

std::vector<StageResult> beta_sweep(const ProblemInstance& instance, const AnnealParams& params,
                                    std::span<const double> betas, const CostWeights& base,
                                    double t_ltsa) {
  if (betas.empty()) throw std::invalid_argument("beta sweep needs at least one beta");
  for (double b : betas) {
    if (!(b > 0.0)) throw std::invalid_argument("beta sweep: every beta must be > 0");
  }

  const long n = static_cast<long>(betas.size());
  std::vector<std::optional<StageResult>> slots(betas.size());
  std::exception_ptr failure;

#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < n; ++i) {
    try {
      AnnealParams run = params;
      run.rng_seed = params.rng_seed + static_cast<std::uint64_t>(i);
      CostWeights w = base;
      w.beta_ft = betas[static_cast<std::size_t>(i)];
      slots[static_cast<std::size_t>(i)] = optimize_two_stage(instance, run, w, t_ltsa);
    } catch (...) {
#pragma omp critical(dmfb_sweep_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<StageResult> out;
  out.reserve(slots.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace dmfb
