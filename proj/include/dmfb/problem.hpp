#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dmfb {

/// Array bounds the optimizer may use, plus the physical electrode pitch.
struct GridSpec {
  int rows_max = 1;
  int cols_max = 1;
  double pitch_mm = 1.5;

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

/// One scheduled module. Footprint dimensions include the segregation ring.
/// Unrotated, the module spans `height_cells` rows and `width_cells` columns.
struct ModuleSpec {
  std::string id;
  int width_cells = 1;
  int height_cells = 1;
  double start_time_s = 0.0;
  double duration_s = 1.0;
  bool rotatable = true;

  double end_time_s() const { return start_time_s + duration_s; }
  int cell_count() const { return width_cells * height_cells; }

  friend bool operator==(const ModuleSpec&, const ModuleSpec&) = default;
};

struct ProblemInstance {
  GridSpec grid;
  std::vector<ModuleSpec> modules;

  /// Index of the module with `id`; nullopt when absent.
  std::optional<std::size_t> find(std::string_view id) const;

  friend bool operator==(const ProblemInstance&, const ProblemInstance&) = default;
};

/// Default bound used when a problem file omits rows_max/cols_max: the sum
/// of every module's larger dimension, which always admits a feasible
/// single-row construction.
int default_grid_extent(const std::vector<ModuleSpec>& modules);

/// Throws ValidationError naming the offending field and module id.
void validate(const ProblemInstance& instance);

ProblemInstance load_problem(std::istream& source);
ProblemInstance load_problem_text(std::string_view text);
ProblemInstance load_problem_file(const std::filesystem::path& path);

/// Canonical structured-text form (sorted keys, two-space indent, trailing
/// newline). `load_problem_text(serialize_problem(p)) == p` for valid p.
std::string serialize_problem(const ProblemInstance& instance);

enum class PcrSchedule {
  /// Leaf mixes staggered so that M1 and M3 are never active together
  /// (M3@0, M2/M4@5, M1@6, M5@10, M6@16, M7@26). Default.
  staggered,
  /// Every mix starts as soon as its inputs are ready (M1-M4@0, M5@5,
  /// M6@10, M7@20).
  asap,
};

/// The seven-mix PCR mixing stage: M5 mixes M2+M4, M6 mixes M1+M3, M7 mixes
/// M5+M6. Dimensions and durations follow the published resource binding;
/// pitch 1.5 mm.
ProblemInstance pcr_fixture(PcrSchedule schedule = PcrSchedule::staggered);

}  // namespace dmfb
