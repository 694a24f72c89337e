#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dmfb/annealer.hpp"
#include "dmfb/fault_tolerance.hpp"

namespace dmfb {

enum class Command { greedy, anneal, two_stage, sweep, fti, rects };

const char* to_string(Command c);

struct RunConfig {
  Command command = Command::greedy;
  std::string input_path;
  std::optional<std::string> output_path;  // stdout when absent
  std::optional<std::string> render_path;
  bool ascii = false;
  AnnealParams params;
  CostWeights weights;
  std::vector<double> betas{10, 20, 30, 40, 50, 60};
  double t_ltsa = 0.0;  // 0: t_initial / 100
  std::optional<int> max_rows;
  std::optional<int> max_cols;
  RelocationSpace space = RelocationSpace::bounding_array;
};

enum ExitCode : int { kExitOk = 0, kExitInfeasible = 1, kExitUsage = 2, kExitIo = 3 };

/// --help / --version; what() holds the text to print, exit code 0.
struct HelpRequested : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// `args` excludes the program name. Throws UsageError or HelpRequested.
RunConfig parse_cli(const std::vector<std::string>& args);
RunConfig parse_cli(int argc, const char* const* argv);

/// Executes one command. Result documents go to the output path or `out`,
/// the one-line summary to `err`. Throws the library's error types.
void run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse_cli + run with errors mapped to ExitCode values.
int run_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dmfb
