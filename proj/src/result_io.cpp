#include "dmfb/result_io.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "dmfb/error.hpp"

namespace dmfb {

namespace {

using nlohmann::json;  // std::map backed, so keys come out sorted

std::string dump(const json& j) { return j.dump(2) + "\n"; }

const char* ft_term_name(FtTerm t) {
  switch (t) {
    case FtTerm::fti: return "fti";
    case FtTerm::covered_cells: return "covered_cells";
    case FtTerm::covered_used_cells: return "covered_used_cells";
  }
  return "fti";
}

json placement_json(const Placement& p) {
  json mods = json::array();
  for (std::size_t i = 0; i < p.size(); ++i) {
    mods.push_back({{"id", p.spec(i).id},
                    {"row", p[i].row},
                    {"col", p[i].col},
                    {"rotated", p[i].rotated}});
  }
  return mods;
}

json stage_body(const StageResult& r) {
  json j = {
      {"stage", r.stage},
      {"seed", r.seed},
      {"rows_used", r.area.rows_used},
      {"cols_used", r.area.cols_used},
      {"cell_count", r.area.cell_count},
      {"area_mm2", r.area_mm2},
      {"k", r.k},
      {"fti", r.fti},
      {"placement", placement_json(r.placement)},
  };
  if (r.stage != "greedy") {
    j["parameters"] = {{"t_initial", r.params.t_initial},
                       {"cooling_alpha", r.params.cooling_alpha},
                       {"iters_per_module", r.params.iters_per_module},
                       {"p_single_move", r.params.p_single_move},
                       {"window_initial", r.params.window_initial},
                       {"window_min", r.params.window_min}};
    j["weights"] = {{"alpha_area", r.weights.alpha_area},
                    {"beta_ft", r.weights.beta_ft},
                    {"lambda_overlap", r.weights.lambda_overlap},
                    {"ft_term", ft_term_name(r.weights.ft_term)}};
  }
  if (r.stage == "two-stage") j["parameters"]["t_ltsa"] = r.t_ltsa;
  return j;
}

json problem_json(const ProblemInstance& inst) { return json::parse(serialize_problem(inst)); }

json parse_or_throw(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

std::string stage_result_json(const StageResult& result) {
  json j = stage_body(result);
  j["schema_version"] = kResultSchemaVersion;
  j["kind"] = "stage_result";
  j["problem"] = problem_json(result.placement.instance());
  return dump(j);
}

std::string sweep_json(std::span<const StageResult> results) {
  json runs = json::array();
  for (const StageResult& r : results) {
    json body = stage_body(r);
    body["beta_ft"] = r.beta_ft;
    runs.push_back(std::move(body));
  }
  json j = {{"schema_version", kResultSchemaVersion}, {"kind", "beta_sweep"}, {"runs", runs}};
  if (!results.empty()) j["problem"] = problem_json(results.front().placement.instance());
  return dump(j);
}

std::string coverage_json(const Placement& p, const CoverageReport& report) {
  json rows = json::array();
  for (int r = report.grid_rows; r >= 1; --r) {
    std::string line;
    for (int c = 1; c <= report.grid_cols; ++c) line += report.covered_at({r, c}) ? '1' : '0';
    rows.push_back(line);
  }
  json j = {
      {"schema_version", kResultSchemaVersion},
      {"kind", "coverage_report"},
      {"rows", report.grid_rows},
      {"cols", report.grid_cols},
      {"origin", {{"row", report.region.row_lo}, {"col", report.region.col_lo}}},
      {"k", report.k},
      {"fti", report.fti},
      {"covered_top_down", rows},
      {"placement", placement_json(p)},
  };
  return dump(j);
}

std::string rects_json(const OccupancyMatrix& m, std::span<const MaximalEmptyRect> rects) {
  json list = json::array();
  for (const MaximalEmptyRect& r : rects) {
    list.push_back({{"top", r.top}, {"bottom", r.bottom}, {"left", r.left}, {"right", r.right}});
  }
  json j = {{"schema_version", kResultSchemaVersion},
            {"kind", "maximal_empty_rects"},
            {"rows", m.rows()},
            {"cols", m.cols()},
            {"rects", list}};
  return dump(j);
}

std::string canonicalize_json(std::string_view text) { return dump(parse_or_throw(text)); }

LoadedPlacement load_placement(std::string_view text) {
  const json j = parse_or_throw(text);
  if (!j.is_object() || !j.contains("problem") || !j.contains("placement")) {
    throw ParseError("result document needs \"problem\" and \"placement\"");
  }
  LoadedPlacement out{load_problem_text(j["problem"].dump()), {}};
  const json& mods = j["placement"];
  if (!mods.is_array()) throw ParseError("\"placement\" must be an array");
  out.placed.resize(out.problem.modules.size());
  std::vector<bool> seen(out.placed.size(), false);
  try {
    for (const json& m : mods) {
      const std::string id = m.at("id").get<std::string>();
      std::size_t idx = out.placed.size();
      for (std::size_t i = 0; i < out.problem.modules.size(); ++i) {
        if (out.problem.modules[i].id == id) idx = i;
      }
      if (idx == out.placed.size()) throw ValidationError("placement names unknown module " + id);
      if (seen[idx]) throw ValidationError("module " + id + " placed twice");
      seen[idx] = true;
      out.placed[idx] = {m.at("row").get<int>(), m.at("col").get<int>(),
                         m.value("rotated", false)};
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("placement entry: ") + e.what());
  }
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (!seen[i]) throw ValidationError("module " + out.problem.modules[i].id + " not placed");
  }
  return out;
}

OccupancyMatrix load_matrix(std::string_view text) {
  const json j = parse_or_throw(text);
  try {
    const int rows = j.at("rows").get<int>();
    const int cols = j.at("cols").get<int>();
    const json& cells = j.at("cells");
    if (rows < 1 || cols < 1) throw ValidationError("matrix needs rows, cols >= 1");
    if (!cells.is_array() || static_cast<int>(cells.size()) != rows) {
      throw ValidationError("\"cells\" must hold one string per row");
    }
    OccupancyMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i) {
      const std::string line = cells[static_cast<std::size_t>(i)].get<std::string>();
      if (static_cast<int>(line.size()) != cols) {
        throw ValidationError("matrix row " + std::to_string(i + 1) + " has wrong length");
      }
      const int r = rows - i;  // first string is the top row
      for (int c = 1; c <= cols; ++c) {
        const char ch = line[static_cast<std::size_t>(c - 1)];
        if (ch != '0' && ch != '1') throw ValidationError("matrix cells must be '0' or '1'");
        if (ch == '1') m.set(r, c);
      }
    }
    return m;
  } catch (const json::exception& e) {
    throw ParseError(std::string("matrix: ") + e.what());
  }
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("error reading " + path.string());
  return buf.str();
}

void write_text(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw IoError("error writing " + path.string());
}

}  // namespace dmfb
