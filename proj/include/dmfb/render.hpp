#pragma once

#include <filesystem>
#include <string>

#include "dmfb/fault_tolerance.hpp"
#include "dmfb/placement.hpp"

namespace dmfb {

/// SVG drawing of the placement's bounding array, row 1 at the bottom. Each
/// module is a labeled rectangle; modules that reuse cells of a
/// time-disjoint module are hatched and carry a badge with the number of
/// reused cells. With a report, every non-covered cell gets an overlay of
/// class "uncovered".
std::string render_svg(const Placement& p, const CoverageReport* report = nullptr);

/// Text grid, top row first. A cell shows the one-character tag of the
/// module using it, '*' when several time-disjoint modules use it and '.'
/// when unused. With a report a second grid marks covered 'o' and
/// non-covered 'x' cells.
std::string render_ascii(const Placement& p, const CoverageReport* report = nullptr);

/// Writes render_svg to `path`. Throws IoError.
void render_layout(const Placement& p, const CoverageReport* report,
                   const std::filesystem::path& path);

}  // namespace dmfb
