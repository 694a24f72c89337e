#include "dmfb/cli.hpp"

#include <algorithm>
#include <chrono>
#include <iostream>
#include <map>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "dmfb/empty_rect.hpp"
#include "dmfb/error.hpp"
#include "dmfb/pipeline.hpp"
#include "dmfb/render.hpp"
#include "dmfb/result_io.hpp"

namespace dmfb {

const char* to_string(Command c) {
  switch (c) {
    case Command::greedy: return "greedy";
    case Command::anneal: return "anneal";
    case Command::two_stage: return "two-stage";
    case Command::sweep: return "sweep";
    case Command::fti: return "fti";
    case Command::rects: return "rects";
  }
  return "?";
}

namespace {

void add_io(CLI::App* sub, RunConfig& cfg, bool placement_output) {
  sub->add_option("--input", cfg.input_path, "input file")->required();
  sub->add_option("--output", cfg.output_path, "result file (default: stdout)");
  if (placement_output) {
    sub->add_option("--render", cfg.render_path, "write an SVG drawing of the layout");
    sub->add_flag("--ascii", cfg.ascii, "print a text grid of the layout to stdout");
  }
}

void add_grid(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--max-rows", cfg.max_rows, "override grid rows_max")
      ->check(CLI::PositiveNumber);
  sub->add_option("--max-cols", cfg.max_cols, "override grid cols_max")
      ->check(CLI::PositiveNumber);
}

void add_anneal(CLI::App* sub, RunConfig& cfg) {
  AnnealParams& a = cfg.params;
  sub->add_option("--seed", a.rng_seed, "random seed")->capture_default_str();
  sub->add_option("--t-initial", a.t_initial, "initial temperature")->capture_default_str();
  sub->add_option("--cooling", a.cooling_alpha, "cooling factor in (0,1)")->capture_default_str();
  sub->add_option("--na", a.iters_per_module, "iterations per module per temperature")
      ->capture_default_str();
  sub->add_option("--p-single", a.p_single_move, "probability of single-module moves")
      ->capture_default_str();
  sub->add_option("--window-initial", a.window_initial,
                  "window span at t_initial in cells (0: derived)")
      ->capture_default_str();
  sub->add_option("--window-min", a.window_min, "smallest window span")->capture_default_str();
  sub->add_option("--alpha", cfg.weights.alpha_area, "area weight")->capture_default_str();
  sub->add_option("--lambda", cfg.weights.lambda_overlap,
                  "overlap penalty per cell (0: derived)")
      ->capture_default_str();
}

void add_ft(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--t-ltsa", cfg.t_ltsa, "refinement temperature (0: t_initial/100)")
      ->capture_default_str();
  const std::map<std::string, FtTerm> terms{{"fti", FtTerm::fti},
                                            {"k", FtTerm::covered_cells},
                                            {"k-used", FtTerm::covered_used_cells}};
  sub->add_option("--ft-term", cfg.weights.ft_term, "quantity beta multiplies: fti, k, k-used")
      ->transform(CLI::CheckedTransformer(terms, CLI::ignore_case));
}

void add_space(CLI::App* sub, RunConfig& cfg) {
  const std::map<std::string, RelocationSpace> spaces{
      {"array", RelocationSpace::bounding_array}, {"grid", RelocationSpace::grid_bounds}};
  sub->add_option("--space", cfg.space, "relocation space: array (bounding array) or grid")
      ->transform(CLI::CheckedTransformer(spaces, CLI::ignore_case));
}

}  // namespace

RunConfig parse_cli(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return parse_cli(args);
}

RunConfig parse_cli(const std::vector<std::string>& args) {
  RunConfig cfg;
  CLI::App app{"Fault-aware module placement for digital microfluidic arrays", "dmfb_place"};
  app.require_subcommand(1, 1);

  CLI::App* greedy = app.add_subcommand("greedy", "deterministic bottom-left baseline");
  add_io(greedy, cfg, true);
  add_grid(greedy, cfg);

  CLI::App* anneal = app.add_subcommand("anneal", "area-only simulated annealing");
  add_io(anneal, cfg, true);
  add_grid(anneal, cfg);
  add_anneal(anneal, cfg);

  CLI::App* two = app.add_subcommand("two-stage", "area annealing then fault-aware refinement");
  add_io(two, cfg, true);
  add_grid(two, cfg);
  add_anneal(two, cfg);
  add_ft(two, cfg);
  two->add_option("--beta", cfg.weights.beta_ft, "fault-tolerance weight (> 0)")->required();

  CLI::App* sweep = app.add_subcommand("sweep", "two-stage runs over several beta values");
  add_io(sweep, cfg, true);
  add_grid(sweep, cfg);
  add_anneal(sweep, cfg);
  add_ft(sweep, cfg);
  sweep->add_option("--betas", cfg.betas, "comma-separated beta values")
      ->delimiter(',')
      ->capture_default_str();

  CLI::App* fti = app.add_subcommand("fti", "coverage report for a stored result");
  add_io(fti, cfg, true);
  add_grid(fti, cfg);
  add_space(fti, cfg);

  CLI::App* rects = app.add_subcommand("rects", "maximal empty rectangles of a 0/1 matrix");
  add_io(rects, cfg, false);

  std::vector<const char*> argv{"dmfb_place"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    const auto used = app.get_subcommands();
    throw HelpRequested(used.empty() ? app.help() : used.front()->help());
  } catch (const CLI::CallForAllHelp&) {
    throw HelpRequested(app.help("", CLI::AppFormatMode::All));
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  const std::string name = app.get_subcommands().front()->get_name();
  for (Command c : {Command::greedy, Command::anneal, Command::two_stage, Command::sweep,
                    Command::fti, Command::rects}) {
    if (name == to_string(c)) cfg.command = c;
  }

  try {
    cfg.params.validate();
    if (cfg.command == Command::two_stage && !(cfg.weights.beta_ft > 0.0)) {
      throw std::invalid_argument("--beta must be > 0");
    }
    if (cfg.command == Command::sweep) {
      if (cfg.betas.empty()) throw std::invalid_argument("--betas needs at least one value");
      for (double b : cfg.betas) {
        if (!(b > 0.0)) throw std::invalid_argument("--betas values must be > 0");
      }
    }
    if (cfg.t_ltsa < 0.0) throw std::invalid_argument("--t-ltsa must be >= 0");
    if (cfg.weights.alpha_area < 0.0) throw std::invalid_argument("--alpha must be >= 0");
    if (cfg.weights.lambda_overlap < 0.0) {
      throw std::invalid_argument("--lambda must be > 0 (or 0 for the derived default)");
    }
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return cfg;
}

namespace {

ProblemInstance load_instance(const RunConfig& cfg) {
  ProblemInstance inst = load_problem_text(read_text(cfg.input_path));
  if (cfg.max_rows) inst.grid.rows_max = *cfg.max_rows;
  if (cfg.max_cols) inst.grid.cols_max = *cfg.max_cols;
  if (cfg.max_rows || cfg.max_cols) {
    try {
      validate(inst);
    } catch (const ValidationError& e) {
      throw UsageError(std::string("--max-rows/--max-cols: ") + e.what());
    }
  }
  return inst;
}

void emit(const RunConfig& cfg, const std::string& doc, std::ostream& out) {
  if (cfg.output_path) {
    write_text(*cfg.output_path, doc);
  } else {
    out << doc;
  }
}

void show(const RunConfig& cfg, const Placement& p, const CoverageReport* report,
          std::ostream& out) {
  if (cfg.render_path) render_layout(p, report, *cfg.render_path);
  if (cfg.ascii) out << render_ascii(p, report);
}

void summary(const StageResult& r, std::ostream& err) {
  err << fmt::format("{}: {}x{} = {} cells ({} mm2), k={}, fti={:.4f}, {:.2f} s\n", r.stage,
                     r.area.rows_used, r.area.cols_used, r.area.cell_count, r.area_mm2, r.k,
                     r.fti, r.elapsed_s);
}

void finish_stage(const RunConfig& cfg, const StageResult& r, std::ostream& out,
                  std::ostream& err) {
  emit(cfg, stage_result_json(r), out);
  const CoverageReport report = coverage_report(r.placement);
  show(cfg, r.placement, &report, out);
  summary(r, err);
}

}  // namespace

void run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  switch (cfg.command) {
    case Command::greedy: {
      const ProblemInstance inst = load_instance(cfg);
      finish_stage(cfg, greedy_baseline(inst), out, err);
      return;
    }
    case Command::anneal: {
      const ProblemInstance inst = load_instance(cfg);
      finish_stage(cfg, optimize_area(inst, cfg.params), out, err);
      return;
    }
    case Command::two_stage: {
      const ProblemInstance inst = load_instance(cfg);
      finish_stage(cfg, optimize_two_stage(inst, cfg.params, cfg.weights, cfg.t_ltsa), out, err);
      return;
    }
    case Command::sweep: {
      const ProblemInstance inst = load_instance(cfg);
      const std::vector<StageResult> runs =
          beta_sweep(inst, cfg.params, cfg.betas, cfg.weights, cfg.t_ltsa);
      emit(cfg, sweep_json(runs), out);
      for (const StageResult& r : runs) {
        err << fmt::format("beta={} ", r.beta_ft);
        summary(r, err);
      }
      // Draw the most fault-tolerant run, smaller area on ties.
      const auto best = std::min_element(runs.begin(), runs.end(), [](const auto& a, const auto& b) {
        if (a.fti != b.fti) return a.fti > b.fti;
        return a.cell_count() < b.cell_count();
      });
      const CoverageReport report = coverage_report(best->placement);
      show(cfg, best->placement, &report, out);
      return;
    }
    case Command::fti: {
      LoadedPlacement loaded = load_placement(read_text(cfg.input_path));
      if (cfg.max_rows) loaded.problem.grid.rows_max = *cfg.max_rows;
      if (cfg.max_cols) loaded.problem.grid.cols_max = *cfg.max_cols;
      const Placement p(loaded.problem, loaded.placed);
      if (!p.within_core()) throw ValidationError("placement leaves the grid bounds");
      const auto t0 = std::chrono::steady_clock::now();
      const CoverageReport report = coverage_report(p, cfg.space);
      const double secs =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      emit(cfg, coverage_json(p, report), out);
      show(cfg, p, &report, out);
      err << fmt::format("fti: {}x{} array, k={}, fti={:.4f}, {:.3f} s\n", report.grid_rows,
                         report.grid_cols, report.k, report.fti, secs);
      return;
    }
    case Command::rects: {
      const OccupancyMatrix m = load_matrix(read_text(cfg.input_path));
      const std::vector<MaximalEmptyRect> rects = maximal_empty_rects(m);
      emit(cfg, rects_json(m, rects), out);
      err << fmt::format("rects: {} maximal empty rectangles in {}x{}\n", rects.size(), m.rows(),
                         m.cols());
      return;
    }
  }
}

int run_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  try {
    run(parse_cli(argc, argv), out, err);
    return kExitOk;
  } catch (const HelpRequested& h) {
    out << h.what();
    return kExitOk;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InfeasibleError& e) {
    err << "infeasible: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << "\n";
    return kExitIo;
  } catch (const ParseError& e) {
    err << "input error: " << e.what() << "\n";
    return kExitIo;
  } catch (const ValidationError& e) {
    err << "input error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace dmfb
