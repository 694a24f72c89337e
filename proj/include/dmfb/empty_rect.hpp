#pragma once

#include <compare>
#include <span>
#include <vector>

#include "dmfb/placement.hpp"

namespace dmfb {

/// Inclusive bounds in the local 1-based coordinates of the source matrix.
/// Rows grow upward, so top >= bottom.
struct MaximalEmptyRect {
  int top = 1;
  int bottom = 1;
  int left = 1;
  int right = 1;

  int height() const { return top - bottom + 1; }
  int width() const { return right - left + 1; }

  friend auto operator<=>(const MaximalEmptyRect&, const MaximalEmptyRect&) = default;
};

/// All empty rectangles whose bottom-right corner is `anchor`, summarised by
/// their step corners. Steps are ordered by increasing `left`; heights
/// increase toward the anchor. A step (height h, left l) stands for the
/// rectangle rows [anchor.row, anchor.row + h - 1] x cols [l, anchor.col].
struct Staircase {
  struct Step {
    int height = 0;
    int left = 0;
    friend bool operator==(const Step&, const Step&) = default;
  };

  Cell anchor;
  std::vector<Step> steps;
};

/// Staircase at a local matrix cell. Empty when the anchor is occupied.
Staircase staircase_at(const OccupancyMatrix& m, Cell anchor);

/// Every maximal empty rectangle of `m`, sorted, without duplicates.
///
/// Rows are swept top to bottom and columns left to right. For each cell the
/// staircase is maintained as a stack of (left, height) steps over the
/// column heights of empty runs extending upward. When a step is cut off by
/// a shorter column it is maximal on the left, right and top; it is reported
/// when the row below it is blocked somewhere (or it sits on row 1).
/// O(rows * cols) time.
std::vector<MaximalEmptyRect> maximal_empty_rects(const OccupancyMatrix& m);

/// Reference enumeration: every candidate rectangle is tested for emptiness
/// and for one-cell extension in all four directions. Throws
/// std::length_error when the matrix exceeds `max_cells`.
std::vector<MaximalEmptyRect> brute_force_maximal_rects(const OccupancyMatrix& m,
                                                        long max_cells = 400);

/// True iff some rectangle holds a w-wide, h-tall block (or h-wide, w-tall
/// when rotation is allowed).
bool can_accommodate(std::span<const MaximalEmptyRect> rects, int w, int h, bool allow_rotation);

}  // namespace dmfb
