#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "fracineq/grid.hpp"
#include "fracineq/harness.hpp"

namespace fracineq::cli {

struct OperatorContext {
    double s = 0.5;
    std::size_t n = 128;
    double y_max = 10.0;
    std::size_t ny = 64;
    std::uint64_t seed = 1;
};

// An operator bound to its node set: grid-backed operators carry the grid,
// the OU and metric-measure operators carry coordinates only.
struct OperatorInstance {
    harness::OperatorHandle handle;
    GridPtr grid;
    std::vector<double> coords;
};

struct OperatorEntry {
    std::string name;
    std::string description;
    std::function<OperatorInstance(const OperatorContext&)> make;
};

const std::vector<OperatorEntry>& operator_registry();
// Throws ConfigError naming the registry contents.
const OperatorEntry& find_operator(const std::string& name);

struct FunctionEntry {
    std::string name;
    std::string description;
    std::function<double(double)> f;
};

const std::vector<FunctionEntry>& function_registry();
const FunctionEntry& find_function(const std::string& name);

const std::vector<std::string>& check_names();

// Degree of the Hermite polynomial drawn by random_input for ou-frac.
inline constexpr std::size_t kOuInputDegree = 4;

// Seeded band-limited input on the operator's nodes (sign changing on grids).
std::vector<double> random_input(const OperatorInstance& op, std::uint64_t seed);

}  // namespace fracineq::cli
