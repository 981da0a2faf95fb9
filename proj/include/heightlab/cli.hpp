#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace heightlab {

enum ExitCode : int { kExitOk = 0, kExitDomain = 1, kExitResource = 2, kExitInternal = 3 };

struct RunConfig {
  std::string command;
  std::string family;
  std::string family_file;
  std::string point;
  int nmax = 64;
  /// Per-command iterate count; each command has its own default.
  std::optional<int> iters;
  std::string grid;
  double threshold = 1e12;
  std::string pairs;
  std::string out;
  std::string format = "text";
  int workers = 1;
  bool lenient = false;
  std::string lift;
  std::string at;
  std::string annulus;
  std::string radii;
  std::string metric = "affine";
};

/// Subcommands: height, orbit, classify, resultant, degenerate, escape,
/// activity, preperiodic-params, density.
const std::vector<std::string>& command_names();

/// Executes one command. Errors are reported on err and mapped to exit
/// codes: 1 domain, 2 resource, 3 violated invariant (witness printed).
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Flag parsing (with --config key=value files and HEIGHTLAB_WORKERS)
/// followed by run().
int cli_main(int argc, char** argv, std::ostream& out, std::ostream& err);

std::vector<std::pair<int, int>> parse_pairs(const std::string& text);

}  // namespace heightlab
