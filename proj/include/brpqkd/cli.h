#pragma once

#include <ostream>
#include <string_view>

#include "brpqkd/config.h"
#include "brpqkd/table.h"

namespace brpqkd {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 2,
  kExitInsecure = 3,
  kExitMcFailure = 4,
};

inline constexpr std::uint64_t kMinValidationPulses = 10'000;
inline constexpr double kMaxAbsZ = 4.0;

struct CommandOutput {
  Table table;
  int exit_code = kExitOk;
};

// Detector as seen by the security model; with add_crosstalk the switch
// leak's false-click probability is added to the dark-click probability.
DetectorParams effective_detector(const ExperimentConfig& config);

CommandOutput cmd_evaluate(const ExperimentConfig& config);
CommandOutput cmd_optimize(const ExperimentConfig& config);
// axis is "distance" or "disturbance".
CommandOutput cmd_sweep(const ExperimentConfig& config, std::string_view axis);
CommandOutput cmd_mc_validate(const ExperimentConfig& config);
CommandOutput cmd_budget(const ExperimentConfig& config);

// Full command line: parses flags, merges preset/config/flags, runs one
// command and writes its table to `out` (or --out).
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace brpqkd
