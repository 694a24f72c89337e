#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <random>

#include "dmfb/fault_tolerance.hpp"
#include "dmfb/placement.hpp"

namespace dmfb {

using Rng = std::mt19937_64;

struct AnnealParams {
  double t_initial = 10000.0;
  double cooling_alpha = 0.9;
  int iters_per_module = 400;
  double p_single_move = 0.75;
  /// Window span at t_initial, in cells. 0 selects
  /// max(rows_max, cols_max, ceil(t_initial)); proposals are clipped to the
  /// core area, so a span wider than the grid means "anywhere".
  int window_initial = 0;
  int window_min = 1;
  std::uint64_t rng_seed = 1;

  /// Throws std::invalid_argument on out-of-range fields.
  void validate() const;
  /// Copy with instance-dependent defaults filled in.
  AnnealParams resolve(const ProblemInstance& instance) const;
};

/// What the beta weight multiplies.
enum class FtTerm : std::uint8_t {
  /// The fault tolerance index k / (m x n), in [0, 1]. Default.
  fti,
  /// The covered-cell count k. Unused cells count as covered, so with
  /// beta > alpha every extra empty column lowers the cost.
  covered_cells,
  /// Covered cells that some module uses (k minus the unused cells).
  covered_used_cells,
};

struct CostWeights {
  double alpha_area = 1.0;
  double beta_ft = 0.0;
  /// Penalty per overlapping cell. 0 selects 2 x alpha_area x (largest
  /// module cell count), so stacking two modules never pays off.
  double lambda_overlap = 0.0;
  FtTerm ft_term = FtTerm::fti;

  void validate() const;
  CostWeights resolve(const ProblemInstance& instance) const;
};

enum class MoveKind : std::uint8_t { displace, displace_rotate, interchange, interchange_rotate };

const char* to_string(MoveKind kind);

/// Subset of move kinds the generator may emit.
class MoveSet {
 public:
  constexpr MoveSet() = default;
  constexpr MoveSet(std::initializer_list<MoveKind> kinds) {
    for (MoveKind k : kinds) mask_ |= bit(k);
  }

  static constexpr MoveSet all() {
    return {MoveKind::displace, MoveKind::displace_rotate, MoveKind::interchange,
            MoveKind::interchange_rotate};
  }
  static constexpr MoveSet displacements() {
    return {MoveKind::displace, MoveKind::displace_rotate};
  }

  constexpr bool contains(MoveKind k) const { return (mask_ & bit(k)) != 0; }
  constexpr bool empty() const { return mask_ == 0; }

 private:
  static constexpr std::uint8_t bit(MoveKind k) {
    return static_cast<std::uint8_t>(1u << static_cast<unsigned>(k));
  }
  std::uint8_t mask_ = 0;
};

struct Move {
  MoveKind kind = MoveKind::displace;
  std::size_t first = 0;
  std::size_t second = 0;  // interchange kinds only
  Cell target;             // displacement kinds only
  bool rotate_first = false;
  bool rotate_second = false;
};

/// Constructive start: modules side by side along the bottom edge in
/// instance order, wrapping into a new shelf when a row is full. Ignores
/// time sharing, so the result is always overlap-free. Throws
/// InfeasibleError naming the required bound when the grid is too small.
Placement initial_placement(const ProblemInstance& instance);

struct CostBreakdown {
  long cells = 0;
  long overlap = 0;
  long k = 0;  // covered cells; 0 unless evaluated and feasible
  long k_used = 0;
  double fti = 0.0;
  double total = 0.0;
};

/// alpha x cells - beta x (FTI or k) + lambda x overlap. Coverage is
/// evaluated only when `with_ft` is set and the placement is feasible;
/// otherwise the fault-tolerance term is 0. `weights` must be resolved.
CostBreakdown evaluate(const Placement& p, const CostWeights& weights, bool with_ft);
inline double cost(const Placement& p, const CostWeights& weights, bool with_ft) {
  return evaluate(p, weights, with_ft).total;
}

/// max(window_min, ceil(window_initial x t / t_initial)). `params` must be
/// resolved.
int window_span(double t, const AnnealParams& params);

/// Draws one move. Displacements land inside the Chebyshev window around the
/// module's bottom-left corner, clipped to the core area.
Move propose(const Placement& p, double t, const AnnealParams& params, MoveSet allowed, Rng& rng);

/// The moved placement, or nullopt when a footprint would leave the core.
std::optional<Placement> apply_move(const Placement& p, const Move& move);

/// Accept when delta <= 0, otherwise when a uniform draw r in [0, 1)
/// satisfies r < exp(-delta / t).
bool metropolis_accept(double delta, double t, Rng& rng);

/// Per-iteration trace for instrumentation.
struct AnnealStep {
  int round = 0;
  double temperature = 0.0;
  int window = 0;
  Move move;
  bool in_bounds = false;
  double delta = 0.0;
  bool accepted = false;
  double cost = 0.0;  // current cost after the decision
  bool feasible = false;
};

using AnnealObserver = std::function<void(const AnnealStep&)>;

struct AnnealOutcome {
  Placement placement;
  CostBreakdown cost;
  bool feasible = false;  // false: no overlap-free state was ever visited
  int rounds = 0;
  long iterations = 0;
  long accepted = 0;
  double final_temperature = 0.0;
};

/// Metropolis annealing with geometric cooling. Each round runs
/// iters_per_module x (module count) proposals at T_i = t_initial x
/// cooling_alpha^i; the run ends after the first round whose window span
/// is window_min. Returns the lowest-cost overlap-free state seen, or the
/// final state (feasible = false) when none was.
AnnealOutcome anneal(const ProblemInstance& instance, const Placement& start,
                     const AnnealParams& params, const CostWeights& weights, bool with_ft,
                     MoveSet allowed = MoveSet::all(), const AnnealObserver& observer = {});

}  // namespace dmfb
