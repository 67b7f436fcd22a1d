#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "run_config.hpp"

namespace pagrowth::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitData = 2,
  kExitInsufficient = 3,
};

// Parses `args` (args[0] is the program name) and runs the subcommand.
// Progress goes to `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int cmd_ingest(const RunConfig& config, std::ostream& out);
int cmd_measure(const RunConfig& config, std::ostream& out);
int cmd_fit(const RunConfig& config, std::ostream& out);
int cmd_simulate(const RunConfig& config, std::ostream& out);
int cmd_report(const RunConfig& config, std::ostream& out);

// Schedule from the config's overrides, defaulting to yearly cutoffs.
WindowSchedule build_schedule(const TemporalNetwork& net, const RunConfig& config);

}  // namespace pagrowth::cli
