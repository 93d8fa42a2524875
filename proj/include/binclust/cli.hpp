#pragma once

#include <cstdint>
#include <string>

#include "binclust/io.hpp"

namespace binclust {

enum class LogLevel { Quiet = 0, Info = 1, Debug = 2 };

// Verbosity from the BINCLUST_LOG environment variable
// (quiet | info | debug); info when unset or unrecognized.
LogLevel log_level();

// Writes "[level] message" to stderr when enabled. Wall-clock timings belong
// here, never in output files, so reruns stay byte-identical.
void log_line(LogLevel level, const std::string& message);

// Runs `chains` independent chains on the parsed input and writes
// trace_chainI.csv, summary_chainI.json, density_chainI.csv under out_dir.
// Chain seeds are derived from config.seed via the splitmix stream.
void run_fit(const FitConfig& config, const std::string& out_dir);

// Draws n values from the reference mixture, bins them on (5, 35] with unit
// bins, and writes a center-format CSV.
void run_simulate(long n, std::uint64_t seed, const std::string& out_path);

// Process exit code for a thrown Error: 1 for input/validation problems,
// 2 for runtime failures.
int exit_code_for(ErrorCode code);

}  // namespace binclust
