#include "dmfb/problem.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "dmfb/error.hpp"

namespace dmfb {

namespace {

using nlohmann::json;

std::string module_label(const json& node, std::size_t index) {
  if (node.is_object() && node.contains("id") && node["id"].is_string()) {
    return node["id"].get<std::string>();
  }
  return "#" + std::to_string(index);
}

template <typename T>
T require(const json& obj, const char* field, const std::string& where) {
  if (!obj.contains(field)) {
    throw ParseError(where + ": missing field '" + field + "'");
  }
  try {
    return obj.at(field).get<T>();
  } catch (const json::exception&) {
    throw ParseError(where + ": field '" + field + "' has the wrong type");
  }
}

int require_int(const json& obj, const char* field, const std::string& where) {
  if (!obj.contains(field)) {
    throw ParseError(where + ": missing field '" + field + "'");
  }
  const json& v = obj.at(field);
  if (!v.is_number_integer()) {
    throw ParseError(where + ": field '" + field + "' must be an integer");
  }
  return v.get<int>();
}

double require_number(const json& obj, const char* field, const std::string& where) {
  if (!obj.contains(field)) {
    throw ParseError(where + ": missing field '" + field + "'");
  }
  const json& v = obj.at(field);
  if (!v.is_number()) {
    throw ParseError(where + ": field '" + field + "' must be a number");
  }
  return v.get<double>();
}

ProblemInstance from_json(const json& doc) {
  if (!doc.is_object()) {
    throw ParseError("problem: top level must be an object");
  }
  if (!doc.contains("modules") || !doc["modules"].is_array()) {
    throw ParseError("problem: missing array field 'modules'");
  }

  ProblemInstance inst;
  const json& modules = doc["modules"];
  for (std::size_t i = 0; i < modules.size(); ++i) {
    const json& node = modules[i];
    const std::string where = "module " + module_label(node, i);
    if (!node.is_object()) {
      throw ParseError(where + ": must be an object");
    }
    ModuleSpec m;
    m.id = require<std::string>(node, "id", where);
    m.width_cells = require_int(node, "width_cells", where);
    m.height_cells = require_int(node, "height_cells", where);
    m.start_time_s = require_number(node, "start_time_s", where);
    m.duration_s = require_number(node, "duration_s", where);
    m.rotatable = node.contains("rotatable") ? require<bool>(node, "rotatable", where) : true;
    inst.modules.push_back(std::move(m));
  }

  const int extent = default_grid_extent(inst.modules);
  inst.grid = GridSpec{extent, extent, 1.5};
  if (doc.contains("grid")) {
    const json& grid = doc["grid"];
    if (!grid.is_object()) {
      throw ParseError("grid: must be an object");
    }
    if (grid.contains("rows_max")) inst.grid.rows_max = require_int(grid, "rows_max", "grid");
    if (grid.contains("cols_max")) inst.grid.cols_max = require_int(grid, "cols_max", "grid");
    if (grid.contains("pitch_mm")) inst.grid.pitch_mm = require_number(grid, "pitch_mm", "grid");
  }

  validate(inst);
  return inst;
}

json to_json(const ProblemInstance& inst) {
  json modules = json::array();
  for (const ModuleSpec& m : inst.modules) {
    modules.push_back({{"id", m.id},
                       {"width_cells", m.width_cells},
                       {"height_cells", m.height_cells},
                       {"start_time_s", m.start_time_s},
                       {"duration_s", m.duration_s},
                       {"rotatable", m.rotatable}});
  }
  return {{"grid",
           {{"rows_max", inst.grid.rows_max},
            {"cols_max", inst.grid.cols_max},
            {"pitch_mm", inst.grid.pitch_mm}}},
          {"modules", modules}};
}

}  // namespace

std::optional<std::size_t> ProblemInstance::find(std::string_view id) const {
  for (std::size_t i = 0; i < modules.size(); ++i) {
    if (modules[i].id == id) return i;
  }
  return std::nullopt;
}

int default_grid_extent(const std::vector<ModuleSpec>& modules) {
  int extent = 0;
  for (const ModuleSpec& m : modules) {
    extent += std::max(m.width_cells, m.height_cells);
  }
  return std::max(extent, 1);
}

void validate(const ProblemInstance& inst) {
  const GridSpec& g = inst.grid;
  if (g.rows_max < 1) throw ValidationError("grid.rows_max must be >= 1");
  if (g.cols_max < 1) throw ValidationError("grid.cols_max must be >= 1");
  if (!(g.pitch_mm > 0.0)) throw ValidationError("grid.pitch_mm must be > 0");
  if (inst.modules.empty()) throw ValidationError("modules: at least one module is required");

  const int bound = std::max(g.rows_max, g.cols_max);
  std::set<std::string, std::less<>> seen;
  for (const ModuleSpec& m : inst.modules) {
    const std::string where = "module " + m.id;
    if (m.id.empty()) throw ValidationError("module: id must be non-empty");
    if (!seen.insert(m.id).second) throw ValidationError(where + ": duplicate id");
    if (m.width_cells < 1) throw ValidationError(where + ": width_cells must be >= 1");
    if (m.height_cells < 1) throw ValidationError(where + ": height_cells must be >= 1");
    if (m.width_cells > bound) {
      throw ValidationError(where + ": width_cells " + std::to_string(m.width_cells) +
                            " exceeds grid bound " + std::to_string(bound));
    }
    if (m.height_cells > bound) {
      throw ValidationError(where + ": height_cells " + std::to_string(m.height_cells) +
                            " exceeds grid bound " + std::to_string(bound));
    }
    if (!(m.start_time_s >= 0.0)) throw ValidationError(where + ": start_time_s must be >= 0");
    if (!(m.duration_s > 0.0)) throw ValidationError(where + ": duration_s must be > 0");
  }
}

ProblemInstance load_problem(std::istream& source) {
  json doc;
  try {
    doc = json::parse(source);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("problem: ") + e.what());
  }
  return from_json(doc);
}

ProblemInstance load_problem_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  return load_problem(in);
}

ProblemInstance load_problem_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open problem file " + path.string());
  return load_problem(in);
}

std::string serialize_problem(const ProblemInstance& instance) {
  return to_json(instance).dump(2) + "\n";
}

ProblemInstance pcr_fixture(PcrSchedule schedule) {
  struct Row {
    const char* id;
    int width, height;
    double duration, start_staggered, start_asap;
  };
  static constexpr Row kRows[] = {
      {"M1", 4, 4, 10.0, 6.0, 0.0},  {"M2", 3, 6, 5.0, 5.0, 0.0},
      {"M3", 4, 5, 6.0, 0.0, 0.0},   {"M4", 3, 6, 5.0, 5.0, 0.0},
      {"M5", 3, 6, 5.0, 10.0, 5.0},  {"M6", 4, 4, 10.0, 16.0, 10.0},
      {"M7", 4, 6, 3.0, 26.0, 20.0},
  };

  ProblemInstance inst;
  for (const Row& r : kRows) {
    const double start = schedule == PcrSchedule::asap ? r.start_asap : r.start_staggered;
    inst.modules.push_back(ModuleSpec{r.id, r.width, r.height, start, r.duration, true});
  }
  const int extent = default_grid_extent(inst.modules);
  inst.grid = GridSpec{extent, extent, 1.5};
  validate(inst);
  return inst;
}

}  // namespace dmfb
