#include "cli/registry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "cli/config.hpp"
#include "fracineq/kernel.hpp"
#include "fracineq/metric_measure.hpp"
#include "fracineq/quadrature.hpp"

namespace fracineq::cli {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

OperatorInstance on_grid(harness::OperatorHandle h, GridPtr g) {
    const auto axis = g->axis();
    return {std::move(h), g, std::vector<double>(axis.begin(), axis.end())};
}

GridPtr periodic(const OperatorContext& c) { return make_grid(GridKind::Periodic, {0.0, kTwoPi}, c.n); }
GridPtr interval(const OperatorContext& c) {
    return make_grid(GridKind::DirichletInterval, {0.0, std::numbers::pi}, c.n);
}

// Random lattice kernel: nonnegative table entries, about a third of them zero.
nonlocal::KernelSpec random_lattice_kernel(const Grid& g, std::uint64_t seed) {
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const std::size_t reach = std::max<std::size_t>(2, g.per_axis() / 4);
    std::vector<double> table(reach + 1, 0.0);
    for (std::size_t m = 1; m <= reach; ++m) {
        const double r = unit(rng);
        table[m] = r < 0.33 ? 0.0 : unit(rng) * std::pow(static_cast<double>(m), -1.5);
    }
    table[1] = 1.0;
    return nonlocal::lattice_kernel(std::move(table), g.spacing());
}

std::vector<OperatorEntry> build_registry() {
    using harness::OperatorHandle;
    std::vector<OperatorEntry> r;
    r.push_back({"frac-pv", "P.V. kernel sum for (-Delta)^s on the periodic grid [0, 2pi)",
                 [](const OperatorContext& c) {
                     auto g = periodic(c);
                     return on_grid(harness::frac_pv_handle(g, FracParams::make(c.s)), g);
                 }});
    r.push_back({"frac-pv-dirichlet", "P.V. kernel sum with zero exterior on (0, pi)",
                 [](const OperatorContext& c) {
                     auto g = interval(c);
                     return on_grid(harness::frac_pv_handle(g, FracParams::make(c.s)), g);
                 }});
    r.push_back({"kernel-random", "non-divergence operator with a seeded random lattice kernel (periodic)",
                 [](const OperatorContext& c) {
                     auto g = periodic(c);
                     return on_grid(harness::kernel_handle(g, random_lattice_kernel(*g, c.seed), "kernel-random"), g);
                 }});
    r.push_back({"restricted", "restricted fractional Laplacian on (0, pi)",
                 [](const OperatorContext& c) {
                     auto g = interval(c);
                     return on_grid(harness::restricted_handle(g, FracParams::make(c.s)), g);
                 }});
    r.push_back({"metric-lie", "Lie-group form on the cyclic group Z_n with the word metric",
                 [](const OperatorContext& c) {
                     const std::size_t n = std::min<std::size_t>(c.n, 96);
                     auto space = nonlocal::cyclic_group(n);
                     std::vector<double> coords(n);
                     for (std::size_t i = 0; i < n; ++i) coords[i] = kTwoPi * static_cast<double>(i) / n;
                     return OperatorInstance{
                         harness::metric_measure_handle(space, c.s, nonlocal::MetricForm::LieGroup), nullptr,
                         coords};
                 }});
    r.push_back({"metric-manifold", "manifold form on n points of the unit-speed circle of length 2pi",
                 [](const OperatorContext& c) {
                     const std::size_t n = std::min<std::size_t>(c.n, 96);
                     auto space = nonlocal::circle_space(n, kTwoPi);
                     std::vector<double> coords(n);
                     for (std::size_t i = 0; i < n; ++i) coords[i] = kTwoPi * static_cast<double>(i) / n;
                     return OperatorInstance{
                         harness::metric_measure_handle(space, c.s, nonlocal::MetricForm::Manifold), nullptr,
                         coords};
                 }});
    r.push_back({"fourier-frac", "Fourier multiplier |k|^{2s} on the periodic grid [0, 2pi)",
                 [](const OperatorContext& c) {
                     auto g = periodic(c);
                     return on_grid(harness::fourier_frac_handle(g, c.s), g);
                 }});
    r.push_back({"spectral-dirichlet", "spectral Dirichlet fractional Laplacian on (0, pi)",
                 [](const OperatorContext& c) {
                     auto g = interval(c);
                     return on_grid(harness::spectral_dirichlet_handle(g, c.s), g);
                 }});
    r.push_back({"ou-frac", "(-Delta_gamma)^s on Gauss-Hermite nodes, degree min(n, 32)",
                 [](const OperatorContext& c) {
                     const std::size_t J = std::min<std::size_t>(c.n, 32);
                     auto h = harness::ou_handle(J, c.s);
                     const auto rule = gauss_hermite_rule(J + 1);
                     return OperatorInstance{std::move(h), nullptr, rule.nodes};
                 }});
    r.push_back({"extension-strip", "d_s times the DtN trace of the extension on the periodic strip",
                 [](const OperatorContext& c) {
                     auto g = periodic(c);
                     return on_grid(harness::extension_handle(g, FracParams::make(c.s), c.y_max, c.ny), g);
                 }});
    r.push_back({"extension-cylinder", "d_s times the DtN trace of the extension on the cylinder (0, pi) x (0, y_max)",
                 [](const OperatorContext& c) {
                     auto g = interval(c);
                     return on_grid(harness::extension_handle(g, FracParams::make(c.s), c.y_max, c.ny), g);
                 }});
    return r;
}

std::vector<FunctionEntry> build_functions() {
    return {
        {"zero", "u = 0", [](double) { return 0.0; }},
        {"sin", "u = sin x", [](double x) { return std::sin(x); }},
        {"sin3", "u = sin 3x", [](double x) { return std::sin(3.0 * x); }},
        {"cos", "u = cos x", [](double x) { return std::cos(x); }},
        {"gaussian", "u = exp(-(x - pi)^2)",
         [](double x) {
             const double d = x - std::numbers::pi;
             return std::exp(-d * d);
         }},
        {"bump", "u = 1 - cos x", [](double x) { return 1.0 - std::cos(x); }},
        {"hermite2", "u = (x^2 - 1) / sqrt 2", [](double x) { return (x * x - 1.0) / std::sqrt(2.0); }},
    };
}

template <typename Entry>
std::string names_of(const std::vector<Entry>& v) {
    std::string out;
    for (const auto& e : v) out += (out.empty() ? "" : ", ") + e.name;
    return out;
}

}  // namespace

const std::vector<OperatorEntry>& operator_registry() {
    static const std::vector<OperatorEntry> registry = build_registry();
    return registry;
}

const OperatorEntry& find_operator(const std::string& name) {
    for (const auto& e : operator_registry())
        if (e.name == name) return e;
    throw ConfigError("unknown operator '" + name + "' (operator registry: " + names_of(operator_registry()) + ")");
}

const std::vector<FunctionEntry>& function_registry() {
    static const std::vector<FunctionEntry> registry = build_functions();
    return registry;
}

const FunctionEntry& find_function(const std::string& name) {
    for (const auto& e : function_registry())
        if (e.name == name) return e;
    throw ConfigError("unknown function '" + name + "' (function registry: " + names_of(function_registry()) + ")");
}

const std::vector<std::string>& check_names() {
    static const std::vector<std::string> names = {"cordoba", "kato", "hopf", "identities", "cross"};
    return names;
}

std::vector<double> random_input(const OperatorInstance& op, std::uint64_t seed) {
    if (op.grid) {
        const std::size_t band = std::clamp<std::size_t>(op.grid->per_axis() / 16, 1, 6);
        const auto u = random_smooth(op.grid, seed, band);
        return {u.values().begin(), u.values().end()};
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    if (op.handle.id == "ou-frac") {
        // Low-degree Hermite polynomial evaluated on the nodes.
        const std::size_t degree = kOuInputDegree;
        std::vector<double> c(degree + 1);
        for (std::size_t j = 1; j <= degree; ++j) c[j] = normal(rng) / static_cast<double>(j + 1);
        std::vector<double> out(op.coords.size());
        for (std::size_t i = 0; i < out.size(); ++i) {
            const auto p = hermite_orthonormal_values(degree, op.coords[i]);
            for (std::size_t j = 0; j <= degree; ++j) out[i] += c[j] * p[j];
        }
        return out;
    }
    std::vector<double> out(op.coords.size());
    for (double& v : out) v = normal(rng);
    return out;
}

}  // namespace fracineq::cli
