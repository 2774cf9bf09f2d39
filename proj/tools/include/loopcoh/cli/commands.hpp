#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "loopcoh/cli/config.hpp"

namespace loopcoh::cli {

enum ExitCode : int { kSuccess = 0, kNotComputable = 1, kCheckFailed = 2 };

struct RunOptions {
    std::optional<int> max_degree;         // overrides bounds.max_degree
    std::optional<std::string> cache_dir;  // overrides cache_dir
};

struct CommandResult {
    nlohmann::ordered_json report;  // deterministic; no timings
    std::string text;               // human-readable summary, with timings
    int exit_code = kSuccess;
};

const std::vector<std::string>& command_names();

/// Runs one command on a validated configuration. Errors are rendered into the report.
CommandResult run_command(const std::string& command, const JobConfig& config, const RunOptions& options);

/// Parses the configuration first; invalid documents produce a report with every issue (exit 1).
CommandResult run_command_text(const std::string& command, const std::string& config_text, const RunOptions& options);

}  // namespace loopcoh::cli
