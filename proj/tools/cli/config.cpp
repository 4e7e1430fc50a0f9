#include "cli/config.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "cli/registry.hpp"
#include "fracineq/convex.hpp"

namespace fracineq::cli {

namespace {

const std::set<std::string> kTopLevelKeys = {"operators", "s_values", "n",      "y_max", "ny",    "convex",
                                             "checks",    "kato_eps", "seed",   "trials", "tol_scale",
                                             "output",    "apply",    "cross"};

template <typename T>
T read(const YAML::Node& node, const std::string& key) {
    try {
        return node.as<T>();
    } catch (const YAML::Exception&) {
        throw ConfigError("config key '" + key + "' has the wrong type");
    }
}

template <typename T>
void read_into(const YAML::Node& parent, const std::string& key, T& out, const std::string& prefix = "") {
    if (const YAML::Node n = parent[key]) out = read<T>(n, prefix + key);
}

}  // namespace

ExperimentConfig default_config() {
    ExperimentConfig c;
    for (const auto& op : operator_registry()) c.operators.push_back(op.name);
    for (const auto& f : harness::convex_battery()) c.convex.push_back(f.name);
    return c;
}

ExperimentConfig parse_config(const std::string& yaml_text) {
    YAML::Node root;
    try {
        root = YAML::Load(yaml_text);
    } catch (const YAML::Exception& e) {
        throw ConfigError(std::string("malformed config: ") + e.what());
    }
    ExperimentConfig c = default_config();
    if (!root || root.IsNull()) return c;
    if (!root.IsMap()) throw ConfigError("config must be a mapping of keys to values");
    for (const auto& kv : root) {
        const auto key = kv.first.as<std::string>();
        if (!kTopLevelKeys.count(key)) throw ConfigError("unknown config key '" + key + "'");
    }
    read_into(root, "operators", c.operators);
    read_into(root, "s_values", c.s_values);
    read_into(root, "n", c.n);
    read_into(root, "y_max", c.y_max);
    read_into(root, "ny", c.ny);
    read_into(root, "convex", c.convex);
    read_into(root, "checks", c.checks);
    read_into(root, "kato_eps", c.kato_eps);
    read_into(root, "seed", c.seed);
    read_into(root, "trials", c.trials);
    read_into(root, "tol_scale", c.tol_scale);
    if (const YAML::Node out = root["output"]) c.output = read<std::string>(out, "output");
    if (const YAML::Node a = root["apply"]) {
        read_into(a, "operator", c.apply.op, "apply.");
        read_into(a, "function", c.apply.function, "apply.");
        read_into(a, "s", c.apply.s, "apply.");
        read_into(a, "n", c.apply.n, "apply.");
    }
    if (const YAML::Node x = root["cross"]) {
        read_into(x, "n", c.cross.n, "cross.");
        read_into(x, "ny", c.cross.ny, "cross.");
        read_into(x, "bandwidth", c.cross.bandwidth, "cross.");
        read_into(x, "tolerance", c.cross.tolerance, "cross.");
        read_into(x, "refine", c.cross.refine, "cross.");
    }
    return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file '" + path.string() + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str());
}

void validate(const ExperimentConfig& c) {
    auto check_s = [](double s, const std::string& key) {
        if (!(s > 0.0 && s < 1.0))
            throw ConfigError("config key '" + key + "': s = " + std::to_string(s) + " must lie in (0, 1)");
    };
    if (c.s_values.empty()) throw ConfigError("config key 's_values' is empty");
    for (double s : c.s_values) check_s(s, "s_values");
    check_s(c.apply.s, "apply.s");
    for (const auto& op : c.operators) find_operator(op);
    find_operator(c.apply.op);
    find_function(c.apply.function);
    for (const auto& f : c.convex) {
        try {
            harness::find_convex(f);
        } catch (const std::exception& e) {
            throw ConfigError(std::string("config key 'convex': ") + e.what());
        }
    }
    for (const auto& chk : c.checks)
        if (std::find(check_names().begin(), check_names().end(), chk) == check_names().end())
            throw ConfigError("config key 'checks': unknown check '" + chk + "'");
    if (c.n < 8) throw ConfigError("config key 'n' must be at least 8");
    if (c.apply.n < 8) throw ConfigError("config key 'apply.n' must be at least 8");
    if (c.ny < 16 || c.cross.ny < 16) throw ConfigError("config keys 'ny' and 'cross.ny' must be at least 16");
    if (!(c.y_max > 0.0)) throw ConfigError("config key 'y_max' must be positive");
    if (c.trials == 0) throw ConfigError("config key 'trials' must be positive");
    if (!(c.tol_scale >= 0.0)) throw ConfigError("config key 'tol_scale' must be >= 0");
    if (!(c.cross.tolerance >= 0.0)) throw ConfigError("config key 'cross.tolerance' must be >= 0");
    if (c.cross.n < 16 || 2 * c.cross.bandwidth > c.cross.n / 2)
        throw ConfigError("config key 'cross.bandwidth' must be at most cross.n / 4");
    for (std::size_t i = 0; i < c.kato_eps.size(); ++i)
        if (!(c.kato_eps[i] > 0.0) || (i > 0 && !(c.kato_eps[i] < c.kato_eps[i - 1])))
            throw ConfigError("config key 'kato_eps' must be positive and strictly decreasing");
    if (c.kato_eps.empty()) throw ConfigError("config key 'kato_eps' is empty");
}

nlohmann::json to_json(const ExperimentConfig& c) {
    return {
        {"operators", c.operators},
        {"s_values", c.s_values},
        {"n", c.n},
        {"y_max", c.y_max},
        {"ny", c.ny},
        {"convex", c.convex},
        {"checks", c.checks},
        {"kato_eps", c.kato_eps},
        {"seed", c.seed},
        {"trials", c.trials},
        {"tol_scale", c.tol_scale},
        {"output", c.output.string()},
        {"apply", {{"operator", c.apply.op}, {"function", c.apply.function}, {"s", c.apply.s}, {"n", c.apply.n}}},
        {"cross",
         {{"n", c.cross.n},
          {"ny", c.cross.ny},
          {"bandwidth", c.cross.bandwidth},
          {"tolerance", c.cross.tolerance},
          {"refine", c.cross.refine}}},
    };
}

}  // namespace fracineq::cli
