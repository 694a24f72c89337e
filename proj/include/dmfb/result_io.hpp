#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dmfb/empty_rect.hpp"
#include "dmfb/fault_tolerance.hpp"
#include "dmfb/pipeline.hpp"

namespace dmfb {

inline constexpr int kResultSchemaVersion = 1;

// All writers emit canonical JSON: sorted keys, two-space indent, trailing
// newline. Timing is deliberately absent so identical runs produce
// identical bytes.

std::string stage_result_json(const StageResult& result);
std::string sweep_json(std::span<const StageResult> results);
std::string coverage_json(const Placement& p, const CoverageReport& report);
std::string rects_json(const OccupancyMatrix& m, std::span<const MaximalEmptyRect> rects);

/// Re-emits any result document in canonical form.
std::string canonicalize_json(std::string_view text);

/// Problem plus module positions recovered from a stage-result document.
struct LoadedPlacement {
  ProblemInstance problem;
  std::vector<PlacedModule> placed;
};

/// Accepts a stage-result document. Throws ParseError / ValidationError.
LoadedPlacement load_placement(std::string_view text);

/// {"rows": r, "cols": c, "cells": ["0100", ...]} with the top row first;
/// '1' marks an occupied cell.
OccupancyMatrix load_matrix(std::string_view text);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, std::string_view text);

}  // namespace dmfb
