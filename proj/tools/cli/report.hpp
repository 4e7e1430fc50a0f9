#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fracineq/harness.hpp"

namespace fracineq::cli {

nlohmann::json to_json(const harness::InequalityReport& report);

// Writes to a sibling temporary file and renames it over `path`.
void write_atomic(const std::filesystem::path& path, const std::string& content);

// Header line of column names, then whitespace-separated rows in %.17g.
std::string format_columns(const std::vector<std::string>& names, const std::vector<std::vector<double>>& columns);

}  // namespace fracineq::cli
