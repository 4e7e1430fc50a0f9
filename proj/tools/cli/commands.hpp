#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "cli/config.hpp"

namespace fracineq::cli {

enum ExitCode : int { kPass = 0, kCheckFailed = 1, kConfigError = 2 };

// Worker cap from FRACINEQ_WORKERS (default: hardware concurrency, at least 1).
unsigned worker_count();

// Writes <output>/apply_<operator>_<function>.dat with columns node x u Au.
std::filesystem::path cmd_apply(const ExperimentConfig& config);

// Run report with config echo, per-check reports, constants, timings and overall_pass.
nlohmann::json cmd_verify(const ExperimentConfig& config);

// Closed-form versus calibrated constants across the configured s values.
nlohmann::json cmd_calibrate(const ExperimentConfig& config);

// Human-readable listing of the operator, function, check and convex registries.
std::string cmd_list();

// Writes a run report as <output>/<name>.json and returns its path.
std::filesystem::path write_report(const ExperimentConfig& config, const std::string& name,
                                   const nlohmann::json& report);

}  // namespace fracineq::cli
