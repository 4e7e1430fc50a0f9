#include "cli/report.hpp"

#include <cstdio>
#include <fstream>
#include <system_error>

#include "cli/config.hpp"

namespace fracineq::cli {

nlohmann::json to_json(const harness::InequalityReport& r) {
    nlohmann::json j;
    j["check_name"] = r.check_name;
    j["operator_id"] = r.operator_id;
    j["min_residual"] = r.min_residual;
    j["argmin"] = r.argmin ? nlohmann::json(*r.argmin) : nlohmann::json(nullptr);
    j["tolerance"] = r.tolerance;
    j["pass"] = r.pass;
    j["metadata"] = r.metadata;
    return j;
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
    std::error_code ec;
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path(), ec);
        if (ec) throw ConfigError("cannot create directory '" + path.parent_path().string() + "': " + ec.message());
    }
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ConfigError("cannot write '" + tmp.string() + "'");
        out << content;
        out.flush();
        if (!out) throw ConfigError("write to '" + tmp.string() + "' failed");
    }
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw ConfigError("cannot move output into place at '" + path.string() + "'");
    }
}

std::string format_columns(const std::vector<std::string>& names, const std::vector<std::vector<double>>& columns) {
    std::string out;
    for (std::size_t c = 0; c < names.size(); ++c) out += (c ? " " : "") + names[c];
    out += '\n';
    const std::size_t rows = columns.empty() ? 0 : columns[0].size();
    char buf[32];
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < columns.size(); ++c) {
            std::snprintf(buf, sizeof buf, "%.17g", columns[c][r]);
            if (c) out += ' ';
            out += buf;
        }
        out += '\n';
    }
    return out;
}

}  // namespace fracineq::cli
