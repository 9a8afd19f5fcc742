#pragma once

#include <iosfwd>
#include <span>
#include <string>

#include "experiment.hpp"

namespace beliefnet::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitUsage = 2;

// Parses arguments (without the program name) and runs the command.
int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err);

// Runs an already-parsed configuration.
int run_config(const ExperimentConfig& config, std::ostream& out, std::ostream& err);

}  // namespace beliefnet::cli
