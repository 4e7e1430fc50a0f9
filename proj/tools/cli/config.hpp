#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace fracineq::cli {

// Configuration or I/O problem: maps to exit status 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ApplyConfig {
    std::string op = "fourier-frac";
    std::string function = "sin";
    double s = 0.5;
    std::size_t n = 64;
};

struct CrossConfig {
    std::size_t n = 256;
    std::size_t ny = 64;
    std::size_t bandwidth = 4;
    double tolerance = 5e-2;
    bool refine = true;
};

struct ExperimentConfig {
    std::vector<std::string> operators;
    std::vector<double> s_values = {0.25, 0.5, 0.75};
    std::size_t n = 128;
    double y_max = 10.0;
    std::size_t ny = 64;
    std::vector<std::string> convex;
    std::vector<std::string> checks = {"cordoba", "kato", "hopf", "identities", "cross"};
    std::vector<double> kato_eps = {1e-1, 1e-2, 1e-3};
    std::uint64_t seed = 1;
    std::size_t trials = 3;
    double tol_scale = 1.0;
    std::filesystem::path output = "out";
    ApplyConfig apply;
    CrossConfig cross;
};

// Defaults: every registered operator and convex function.
ExperimentConfig default_config();

ExperimentConfig parse_config(const std::string& yaml_text);
ExperimentConfig load_config(const std::filesystem::path& path);

// Throws ConfigError naming the offending key.
void validate(const ExperimentConfig& config);

nlohmann::json to_json(const ExperimentConfig& config);

}  // namespace fracineq::cli
