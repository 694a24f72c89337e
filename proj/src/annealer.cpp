#include "dmfb/annealer.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <stdexcept>
#include <string>

#include "dmfb/error.hpp"

namespace dmfb {

namespace {

constexpr long kFtGridWarnCells = 10000;

int largest_module_cells(const ProblemInstance& instance) {
  int largest = 0;
  for (const ModuleSpec& m : instance.modules) largest = std::max(largest, m.cell_count());
  return largest;
}

int uniform_int(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

bool coin(Rng& rng, double p) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p; }

// Inclusive range of bottom-left positions along one axis that keep a
// footprint of `extent` cells inside [1, bound] and within `window` of `at`.
std::pair<int, int> window_range(int at, int window, int extent, int bound) {
  return {std::max(1, at - window), std::min(bound - extent + 1, at + window)};
}

// Cells of the bounding array used by at least one module.
long used_cells(const Placement& p) {
  const CellRect box = array_area_cells(p).bounds;
  OccupancyMatrix used(box.rows(), box.cols(), {box.row_lo, box.col_lo});
  for (std::size_t i = 0; i < p.size(); ++i) used.fill(p.footprint(i));
  return used.count();
}

}  // namespace

void AnnealParams::validate() const {
  if (!(t_initial > 0.0)) throw std::invalid_argument("t_initial must be > 0");
  if (!(cooling_alpha > 0.0 && cooling_alpha < 1.0)) {
    throw std::invalid_argument("cooling_alpha must lie in (0, 1)");
  }
  if (iters_per_module < 1) throw std::invalid_argument("iters_per_module must be >= 1");
  if (!(p_single_move > 0.0 && p_single_move < 1.0)) {
    throw std::invalid_argument("p_single_move must lie in (0, 1)");
  }
  if (window_min < 1) throw std::invalid_argument("window_min must be >= 1");
  if (window_initial < 0) throw std::invalid_argument("window_initial must be >= 0");
}

AnnealParams AnnealParams::resolve(const ProblemInstance& instance) const {
  AnnealParams out = *this;
  if (out.window_initial == 0) {
    // Span t_initial cells, so the window reaches one cell (and the run
    // stops) once T has fallen to about one unit of area cost.
    const double scaled = std::min(std::ceil(out.t_initial), 1e9);
    out.window_initial =
        std::max({instance.grid.rows_max, instance.grid.cols_max, static_cast<int>(scaled)});
  }
  out.validate();
  return out;
}

void CostWeights::validate() const {
  if (!(alpha_area >= 0.0)) throw std::invalid_argument("alpha_area must be >= 0");
  if (!(beta_ft >= 0.0)) throw std::invalid_argument("beta_ft must be >= 0");
  if (!(lambda_overlap >= 0.0)) throw std::invalid_argument("lambda_overlap must be >= 0 (0 selects the default)");
}

CostWeights CostWeights::resolve(const ProblemInstance& instance) const {
  validate();
  CostWeights out = *this;
  if (out.lambda_overlap == 0.0) {
    // alpha = 0 would zero the default; fall back to unit area weight.
    const double alpha = out.alpha_area > 0.0 ? out.alpha_area : 1.0;
    out.lambda_overlap = 2.0 * alpha * largest_module_cells(instance);
  }
  return out;
}

const char* to_string(MoveKind kind) {
  switch (kind) {
    case MoveKind::displace: return "displace";
    case MoveKind::displace_rotate: return "displace_rotate";
    case MoveKind::interchange: return "interchange";
    case MoveKind::interchange_rotate: return "interchange_rotate";
  }
  return "?";
}

Placement initial_placement(const ProblemInstance& instance) {
  const GridSpec& g = instance.grid;
  std::vector<PlacedModule> placed;
  placed.reserve(instance.modules.size());

  int shelf_row = 1;
  int shelf_height = 0;
  int next_col = 1;
  for (const ModuleSpec& m : instance.modules) {
    // Orient each module in a way that fits the column bound, preferring
    // the unrotated footprint.
    bool rotated = false;
    if (m.width_cells > g.cols_max || m.height_cells > g.rows_max) {
      rotated = m.rotatable;
    }
    const CellRect probe = footprint(m, {1, 1, rotated});
    if (next_col + probe.cols() - 1 > g.cols_max) {
      shelf_row += shelf_height;
      shelf_height = 0;
      next_col = 1;
    }
    placed.push_back({shelf_row, next_col, rotated});
    next_col += probe.cols();
    shelf_height = std::max(shelf_height, probe.rows());
  }

  Placement p(instance, std::move(placed));
  if (!p.within_core()) {
    const AreaSummary area = array_area_cells(p);
    throw InfeasibleError("initial placement needs at least " +
                          std::to_string(area.bounds.row_hi) + " rows x " +
                          std::to_string(area.bounds.col_hi) + " columns; grid allows " +
                          std::to_string(g.rows_max) + " x " + std::to_string(g.cols_max));
  }
  return p;
}

CostBreakdown evaluate(const Placement& p, const CostWeights& weights, bool with_ft) {
  CostBreakdown c;
  c.cells = array_area_cells(p).cell_count;
  c.overlap = overlap_penalty(p);
  if (with_ft && c.overlap == 0) {
    const CoverageReport report = fast_coverage_report(p);
    c.k = report.k;
    c.fti = report.fti;
    c.k_used = c.k - (c.cells - used_cells(p));
  }
  double ft = 0.0;
  switch (weights.ft_term) {
    case FtTerm::fti: ft = c.fti; break;
    case FtTerm::covered_cells: ft = static_cast<double>(c.k); break;
    case FtTerm::covered_used_cells: ft = static_cast<double>(c.k_used); break;
  }
  c.total = weights.alpha_area * static_cast<double>(c.cells) - weights.beta_ft * ft +
            weights.lambda_overlap * static_cast<double>(c.overlap);
  return c;
}

int window_span(double t, const AnnealParams& params) {
  const double scaled = std::ceil(params.window_initial * t / params.t_initial);
  return std::max(params.window_min, static_cast<int>(scaled));
}

Move propose(const Placement& p, double t, const AnnealParams& params, MoveSet allowed, Rng& rng) {
  const bool single_ok =
      allowed.contains(MoveKind::displace) || allowed.contains(MoveKind::displace_rotate);
  const bool pair_ok =
      p.size() >= 2 &&
      (allowed.contains(MoveKind::interchange) || allowed.contains(MoveKind::interchange_rotate));
  if (!single_ok && !pair_ok) throw std::invalid_argument("propose: no applicable move kind");

  const bool single = single_ok && (!pair_ok || coin(rng, params.p_single_move));
  Move move;

  if (single) {
    const bool both = allowed.contains(MoveKind::displace) &&
                      allowed.contains(MoveKind::displace_rotate);
    bool rotate = both ? coin(rng, 0.5) : allowed.contains(MoveKind::displace_rotate);
    move.first = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(p.size()) - 1));
    rotate = rotate && p.spec(move.first).rotatable;
    move.kind = rotate ? MoveKind::displace_rotate : MoveKind::displace;
    move.rotate_first = rotate;

    PlacedModule moved = p[move.first];
    moved.rotated = moved.rotated != rotate;
    const CellRect shape = footprint(p.spec(move.first), moved);
    const int w = window_span(t, params);
    const GridSpec& g = p.instance().grid;
    const auto [r0, r1] = window_range(moved.row, w, shape.rows(), g.rows_max);
    const auto [c0, c1] = window_range(moved.col, w, shape.cols(), g.cols_max);
    // An empty range means the rotated footprint cannot fit near here at
    // all; keep the corner and let apply_move reject it.
    move.target.row = r0 <= r1 ? uniform_int(rng, r0, r1) : moved.row;
    move.target.col = c0 <= c1 ? uniform_int(rng, c0, c1) : moved.col;
    return move;
  }

  const bool both = allowed.contains(MoveKind::interchange) &&
                    allowed.contains(MoveKind::interchange_rotate);
  const bool rotate = both ? coin(rng, 0.5) : allowed.contains(MoveKind::interchange_rotate);
  const int n = static_cast<int>(p.size());
  move.first = static_cast<std::size_t>(uniform_int(rng, 0, n - 1));
  int other = uniform_int(rng, 0, n - 2);
  if (other >= static_cast<int>(move.first)) ++other;
  move.second = static_cast<std::size_t>(other);
  move.kind = MoveKind::interchange;

  if (rotate) {
    const bool a = p.spec(move.first).rotatable;
    const bool b = p.spec(move.second).rotatable;
    if (a && b) {
      const int pick = uniform_int(rng, 0, 2);  // first, second, or both
      move.rotate_first = pick != 1;
      move.rotate_second = pick != 0;
    } else {
      move.rotate_first = a;
      move.rotate_second = b;
    }
    if (move.rotate_first || move.rotate_second) move.kind = MoveKind::interchange_rotate;
  }
  return move;
}

std::optional<Placement> apply_move(const Placement& p, const Move& move) {
  Placement next = p;
  const CellRect core{1, p.instance().grid.rows_max, 1, p.instance().grid.cols_max};

  switch (move.kind) {
    case MoveKind::displace:
    case MoveKind::displace_rotate: {
      PlacedModule& m = next[move.first];
      m.row = move.target.row;
      m.col = move.target.col;
      m.rotated = m.rotated != move.rotate_first;
      if (!core.contains(next.footprint(move.first))) return std::nullopt;
      break;
    }
    case MoveKind::interchange:
    case MoveKind::interchange_rotate: {
      PlacedModule& a = next[move.first];
      PlacedModule& b = next[move.second];
      std::swap(a.row, b.row);
      std::swap(a.col, b.col);
      a.rotated = a.rotated != move.rotate_first;
      b.rotated = b.rotated != move.rotate_second;
      if (!core.contains(next.footprint(move.first)) ||
          !core.contains(next.footprint(move.second))) {
        return std::nullopt;
      }
      break;
    }
  }
  return next;
}

bool metropolis_accept(double delta, double t, Rng& rng) {
  if (delta <= 0.0) return true;
  const double r = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  return r < std::exp(-delta / t);
}

AnnealOutcome anneal(const ProblemInstance& instance, const Placement& start,
                     const AnnealParams& raw_params, const CostWeights& raw_weights, bool with_ft,
                     MoveSet allowed, const AnnealObserver& observer) {
  const AnnealParams params = raw_params.resolve(instance);
  const CostWeights weights = raw_weights.resolve(instance);
  if (!start.within_core()) throw std::invalid_argument("anneal: start placement leaves the core");
  if (with_ft && static_cast<long>(instance.grid.rows_max) * instance.grid.cols_max >
                     kFtGridWarnCells) {
    std::clog << "warning: fault-tolerance cost on a " << instance.grid.rows_max << "x"
              << instance.grid.cols_max << " grid; each proposal runs a full coverage report\n";
  }

  Rng rng(params.rng_seed);
  Placement current = start;
  CostBreakdown current_cost = evaluate(current, weights, with_ft);

  AnnealOutcome out{current, current_cost, current_cost.overlap == 0, 0, 0, 0, params.t_initial};
  const long inner = static_cast<long>(params.iters_per_module) * static_cast<long>(start.size());

  for (int round = 0;; ++round) {
    const double t = params.t_initial * std::pow(params.cooling_alpha, round);
    const int window = window_span(t, params);

    for (long it = 0; it < inner; ++it) {
      AnnealStep step;
      if (observer) {
        step.round = round;
        step.temperature = t;
        step.window = window;
      }
      const Move move = propose(current, t, params, allowed, rng);
      std::optional<Placement> candidate = apply_move(current, move);
      ++out.iterations;

      bool accepted = false;
      double delta = 0.0;
      if (candidate) {
        const CostBreakdown cand_cost = evaluate(*candidate, weights, with_ft);
        delta = cand_cost.total - current_cost.total;
        accepted = metropolis_accept(delta, t, rng);
        if (accepted) {
          current = std::move(*candidate);
          current_cost = cand_cost;
          ++out.accepted;
          if (current_cost.overlap == 0 && (!out.feasible || current_cost.total < out.cost.total)) {
            out.placement = current;
            out.cost = current_cost;
            out.feasible = true;
          }
        }
      }

      if (observer) {
        step.move = move;
        step.in_bounds = candidate.has_value();
        step.delta = delta;
        step.accepted = accepted;
        step.cost = current_cost.total;
        step.feasible = current_cost.overlap == 0;
        observer(step);
      }
    }

    out.rounds = round + 1;
    out.final_temperature = t;
    if (window <= params.window_min) break;
  }

  if (!out.feasible) {
    out.placement = current;
    out.cost = current_cost;
  }
  return out;
}

}  // namespace dmfb
