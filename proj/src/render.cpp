#include "dmfb/render.hpp"

#include <fmt/format.h>
#include <sstream>
#include <vector>

#include "dmfb/result_io.hpp"

namespace dmfb {

namespace {

constexpr int kCell = 36;
constexpr int kMargin = 24;

const char* kPalette[] = {"#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f",
                          "#edc948", "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac"};

char tag_for(std::size_t i) {
  static constexpr char kTags[] = "123456789ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz";
  return i < sizeof(kTags) - 1 ? kTags[i] : '#';
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

// Cells of module i also used by some time-disjoint module.
long reused_cells(const Placement& p, std::size_t i) {
  const CellRect fi = p.footprint(i);
  long n = 0;
  for (int r = fi.row_lo; r <= fi.row_hi; ++r) {
    for (int c = fi.col_lo; c <= fi.col_hi; ++c) {
      for (std::size_t j = 0; j < p.size(); ++j) {
        if (j != i && !time_overlap(p.spec(i), p.spec(j)) && p.footprint(j).contains(Cell{r, c})) {
          ++n;
          break;
        }
      }
    }
  }
  return n;
}

}  // namespace

std::string render_svg(const Placement& p, const CoverageReport* report) {
  const AreaSummary area = array_area_cells(p);
  const CellRect& b = area.bounds;
  const int rows = area.rows_used;
  const int cols = area.cols_used;
  const int width = cols * kCell + 2 * kMargin;
  const int height = rows * kCell + 2 * kMargin;

  // Grid cell (r, c) -> top-left pixel of that cell.
  auto px = [&](int c) { return kMargin + (c - b.col_lo) * kCell; };
  auto py = [&](int r) { return kMargin + (b.row_hi - r) * kCell; };

  std::ostringstream s;
  s << fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" "
      "viewBox=\"0 0 {} {}\">\n",
      width, height, width, height);
  s << "<defs>\n"
       "  <pattern id=\"hatch\" width=\"8\" height=\"8\" patternUnits=\"userSpaceOnUse\" "
       "patternTransform=\"rotate(45)\">\n"
       "    <line x1=\"0\" y1=\"0\" x2=\"0\" y2=\"8\" stroke=\"#222\" stroke-width=\"2\" "
       "stroke-opacity=\"0.5\"/>\n"
       "  </pattern>\n"
       "</defs>\n";
  s << fmt::format("<title>{}x{} = {} cells</title>\n", rows, cols, area.cell_count);
  s << fmt::format("<rect class=\"array\" x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" "
                   "fill=\"#fafafa\" stroke=\"#333\"/>\n",
                   kMargin, kMargin, cols * kCell, rows * kCell);

  s << "<g class=\"grid\" stroke=\"#ccc\" stroke-width=\"1\">\n";
  for (int c = 1; c < cols; ++c) {
    const int x = kMargin + c * kCell;
    s << fmt::format("  <line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>\n", x, kMargin, x,
                     kMargin + rows * kCell);
  }
  for (int r = 1; r < rows; ++r) {
    const int y = kMargin + r * kCell;
    s << fmt::format("  <line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>\n", kMargin, y,
                     kMargin + cols * kCell, y);
  }
  s << "</g>\n";

  s << "<g class=\"modules\">\n";
  for (std::size_t i = 0; i < p.size(); ++i) {
    const CellRect f = p.footprint(i);
    const ModuleSpec& spec = p.spec(i);
    const int x = px(f.col_lo);
    const int y = py(f.row_hi);
    const int w = f.cols() * kCell;
    const int h = f.rows() * kCell;
    const long shared = reused_cells(p, i);
    const char* color = kPalette[i % std::size(kPalette)];

    s << fmt::format("  <g class=\"module{}\" data-id=\"{}\">\n", shared ? " shared" : "",
                     escape(spec.id));
    s << fmt::format("    <rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{}\" "
                     "fill-opacity=\"0.35\" stroke=\"{}\" stroke-width=\"2\"/>\n",
                     x, y, w, h, color, color);
    if (shared) {
      s << fmt::format("    <rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" "
                       "fill=\"url(#hatch)\"/>\n",
                       x, y, w, h);
    }
    s << fmt::format("    <text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"13\" "
                     "text-anchor=\"middle\">{} [{},{})</text>\n",
                     x + w / 2, y + h / 2 + 4, escape(spec.id), spec.start_time_s,
                     spec.end_time_s());
    if (shared) {
      s << fmt::format("    <g class=\"badge\"><circle cx=\"{}\" cy=\"{}\" r=\"9\" fill=\"#222\"/>"
                       "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"10\" "
                       "fill=\"#fff\" text-anchor=\"middle\">{}</text></g>\n",
                       x + w - 11, y + 11, x + w - 11, y + 15, shared);
    }
    s << "  </g>\n";
  }
  s << "</g>\n";

  if (report != nullptr) {
    s << "<g class=\"coverage\">\n";
    for (int r = 1; r <= report->grid_rows; ++r) {
      for (int c = 1; c <= report->grid_cols; ++c) {
        if (report->covered_at({r, c})) continue;
        const int gr = report->region.row_lo + r - 1;
        const int gc = report->region.col_lo + c - 1;
        if (!b.contains(Cell{gr, gc})) continue;
        const int x = px(gc);
        const int y = py(gr);
        s << fmt::format("  <g class=\"uncovered\"><rect x=\"{}\" y=\"{}\" width=\"{}\" "
                         "height=\"{}\" fill=\"#d00\" fill-opacity=\"0.3\"/>"
                         "<path d=\"M{} {}L{} {}M{} {}L{} {}\" stroke=\"#d00\"/></g>\n",
                         x, y, kCell, kCell, x + 6, y + 6, x + kCell - 6, y + kCell - 6,
                         x + kCell - 6, y + 6, x + 6, y + kCell - 6);
      }
    }
    s << "</g>\n";
  }
  s << "</svg>\n";
  return s.str();
}

std::string render_ascii(const Placement& p, const CoverageReport* report) {
  const AreaSummary area = array_area_cells(p);
  const CellRect& b = area.bounds;
  std::ostringstream s;
  for (int r = b.row_hi; r >= b.row_lo; --r) {
    for (int c = b.col_lo; c <= b.col_hi; ++c) {
      char ch = '.';
      for (std::size_t i = 0; i < p.size(); ++i) {
        if (!p.footprint(i).contains(Cell{r, c})) continue;
        ch = ch == '.' ? tag_for(i) : '*';
      }
      s << ch;
    }
    s << '\n';
  }
  for (std::size_t i = 0; i < p.size(); ++i) {
    s << tag_for(i) << '=' << p.spec(i).id << (i + 1 < p.size() ? ' ' : '\n');
  }
  if (report != nullptr) {
    s << '\n';
    for (int r = report->grid_rows; r >= 1; --r) {
      for (int c = 1; c <= report->grid_cols; ++c) s << (report->covered_at({r, c}) ? 'o' : 'x');
      s << '\n';
    }
    s << fmt::format("k={} fti={:.4f}\n", report->k, report->fti);
  }
  return s.str();
}

void render_layout(const Placement& p, const CoverageReport* report,
                   const std::filesystem::path& path) {
  write_text(path, render_svg(p, report));
}

}  // namespace dmfb
