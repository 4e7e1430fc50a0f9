#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cli/commands.hpp"
#include "cli/config.hpp"
#include "fracineq/error.hpp"

namespace {

using namespace fracineq::cli;

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ',');) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

struct Overrides {
    std::string config_path;
    std::string out;
    std::optional<std::string> checks;
    std::optional<std::uint64_t> seed;
    std::optional<double> tol_scale;
};

ExperimentConfig resolve(const Overrides& o) {
    ExperimentConfig c = o.config_path.empty() ? default_config() : load_config(o.config_path);
    if (!o.out.empty()) c.output = o.out;
    if (o.checks) c.checks = split_list(*o.checks);
    if (o.seed) c.seed = *o.seed;
    if (o.tol_scale) c.tol_scale = *o.tol_scale;
    return c;
}

int finish(const ExperimentConfig& c, const std::string& name, const nlohmann::json& report) {
    const auto path = write_report(c, name, report);
    const bool pass = report.at("overall_pass").get<bool>();
    std::size_t failed = 0;
    for (const auto& r : report.at("reports")) failed += r.value("pass", false) ? 0 : 1;
    std::cout << name << ": " << report.at("reports").size() << " reports, " << failed << " failed -> "
              << path.string() << "\n";
    return pass ? kPass : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical checks of pointwise inequalities for fractional operators"};
    app.require_subcommand(1);
    Overrides o;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", o.config_path, "YAML experiment configuration")->check(CLI::ExistingFile);
        sub->add_option("--out", o.out, "Output directory");
        sub->add_option("--seed", o.seed, "Master seed");
        sub->add_option("--tol-scale", o.tol_scale, "Multiplier on every tolerance")->check(CLI::PositiveNumber);
    };

    auto* apply = app.add_subcommand("apply", "Apply one operator to one registered function");
    add_common(apply);
    std::optional<std::string> op, fn;
    std::optional<double> s;
    std::optional<std::size_t> n;
    apply->add_option("--op", op, "Operator name");
    apply->add_option("--function", fn, "Function name");
    apply->add_option("-s,--order", s, "Fractional order");
    apply->add_option("-n,--nodes", n, "Nodes per axis");

    auto* verify = app.add_subcommand("verify", "Run inequality checks and write a JSON run report");
    add_common(verify);
    verify->add_option("--checks", o.checks, "Comma-separated subset of checks");

    auto* calibrate = app.add_subcommand("calibrate", "Compare closed-form constants with calibrated values");
    add_common(calibrate);

    app.add_subcommand("list", "List registered operators, functions, checks and convex functions");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kPass : kConfigError;
    }

    try {
        if (app.got_subcommand("list")) {
            std::cout << cmd_list();
            return kPass;
        }
        ExperimentConfig c = resolve(o);
        if (app.got_subcommand(apply)) {
            if (op) c.apply.op = *op;
            if (fn) c.apply.function = *fn;
            if (s) c.apply.s = *s;
            if (n) c.apply.n = *n;
            validate(c);
            std::cout << cmd_apply(c).string() << "\n";
            return kPass;
        }
        if (c.checks.empty()) throw ConfigError("no checks selected");
        validate(c);
        if (app.got_subcommand(verify)) return finish(c, "verify", cmd_verify(c));
        return finish(c, "calibrate", cmd_calibrate(c));
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const fracineq::InvalidArgument& e) {
        std::cerr << "invalid argument: " << e.what() << "\n";
        return kConfigError;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return kConfigError;
    }
}
