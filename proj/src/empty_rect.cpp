#include "dmfb/empty_rect.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace dmfb {

namespace {

struct StackEntry {
  int left;
  int height;
};

// Upward empty-run length for every column of `row`, given the run lengths
// of the row above.
void update_heights(const OccupancyMatrix& m, int row, std::vector<int>& heights) {
  for (int col = 1; col <= m.cols(); ++col) {
    heights[col] = m.occupied(row, col) ? 0 : heights[col] + 1;
  }
}

// Feeds column `col` (height `h`) into the staircase stack. Every step cut
// off by `h` is handed to `emit(left, height)` with right edge col - 1.
template <typename Emit>
void push_column(std::vector<StackEntry>& stack, int col, int h, Emit&& emit) {
  int start = col;
  while (!stack.empty() && stack.back().height > h) {
    emit(stack.back().left, stack.back().height);
    start = stack.back().left;
    stack.pop_back();
  }
  if (h > 0 && (stack.empty() || stack.back().height < h)) {
    stack.push_back({start, h});
  }
}

}  // namespace

Staircase staircase_at(const OccupancyMatrix& m, Cell anchor) {
  if (anchor.row < 1 || anchor.row > m.rows() || anchor.col < 1 || anchor.col > m.cols()) {
    throw std::out_of_range("staircase anchor outside matrix");
  }
  std::vector<int> heights(static_cast<std::size_t>(m.cols()) + 1, 0);
  for (int row = m.rows(); row >= anchor.row; --row) {
    update_heights(m, row, heights);
  }
  std::vector<StackEntry> stack;
  for (int col = 1; col <= anchor.col; ++col) {
    push_column(stack, col, heights[col], [](int, int) {});
  }
  Staircase out{anchor, {}};
  for (const StackEntry& e : stack) out.steps.push_back({e.height, e.left});
  return out;
}

std::vector<MaximalEmptyRect> maximal_empty_rects(const OccupancyMatrix& m) {
  const int cols = m.cols();
  std::vector<int> heights(static_cast<std::size_t>(cols) + 2, 0);
  // blocked_below[c]: prefix count of occupied cells in the row beneath the
  // current one, used to test downward maximality in O(1).
  std::vector<int> blocked_below(static_cast<std::size_t>(cols) + 1, 0);
  std::vector<StackEntry> stack;
  std::vector<MaximalEmptyRect> out;

  for (int row = m.rows(); row >= 1; --row) {
    update_heights(m, row, heights);
    if (row > 1) {
      for (int col = 1; col <= cols; ++col) {
        blocked_below[col] = blocked_below[col - 1] + (m.occupied(row - 1, col) ? 1 : 0);
      }
    }

    stack.clear();
    for (int col = 1; col <= cols + 1; ++col) {
      const int h = col <= cols ? heights[col] : 0;
      push_column(stack, col, h, [&](int left, int height) {
        const int right = col - 1;
        const bool floor = row == 1 || blocked_below[right] - blocked_below[left - 1] > 0;
        if (floor) out.push_back({row + height - 1, row, left, right});
      });
    }
  }

  // Each (row, left, right, height) is cut off exactly once, so the list has
  // no duplicates; sorting gives the canonical order.
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<MaximalEmptyRect> brute_force_maximal_rects(const OccupancyMatrix& m, long max_cells) {
  const int rows = m.rows();
  const int cols = m.cols();
  if (static_cast<long>(rows) * cols > max_cells) {
    throw std::length_error("brute_force_maximal_rects: " + std::to_string(rows) + "x" +
                            std::to_string(cols) + " exceeds the " + std::to_string(max_cells) +
                            "-cell bound");
  }

  // Two-dimensional prefix sums of occupied cells.
  std::vector<int> sum(static_cast<std::size_t>(rows + 1) * (cols + 1), 0);
  auto at = [&](int r, int c) -> int& { return sum[static_cast<std::size_t>(r) * (cols + 1) + c]; };
  for (int r = 1; r <= rows; ++r) {
    for (int c = 1; c <= cols; ++c) {
      at(r, c) = (m.occupied(r, c) ? 1 : 0) + at(r - 1, c) + at(r, c - 1) - at(r - 1, c - 1);
    }
  }
  auto is_empty = [&](int bottom, int top, int left, int right) {
    if (bottom < 1 || left < 1 || top > rows || right > cols) return false;
    return at(top, right) - at(bottom - 1, right) - at(top, left - 1) + at(bottom - 1, left - 1) == 0;
  };

  std::vector<MaximalEmptyRect> out;
  for (int bottom = 1; bottom <= rows; ++bottom) {
    for (int top = bottom; top <= rows; ++top) {
      for (int left = 1; left <= cols; ++left) {
        for (int right = left; right <= cols; ++right) {
          if (!is_empty(bottom, top, left, right)) break;
          const bool extendable = is_empty(bottom - 1, top, left, right) ||
                                  is_empty(bottom, top + 1, left, right) ||
                                  is_empty(bottom, top, left - 1, right) ||
                                  is_empty(bottom, top, left, right + 1);
          if (!extendable) out.push_back({top, bottom, left, right});
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool can_accommodate(std::span<const MaximalEmptyRect> rects, int w, int h, bool allow_rotation) {
  return std::any_of(rects.begin(), rects.end(), [&](const MaximalEmptyRect& r) {
    if (r.width() >= w && r.height() >= h) return true;
    return allow_rotation && r.width() >= h && r.height() >= w;
  });
}

}  // namespace dmfb
