// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "fracineq/extension.hpp"
#include "fracineq/harness.hpp"
#include "fracineq/hermite.hpp"
#include "fracineq/kernel.hpp"
#include "fracineq/quadrature.hpp"
#include "fracineq/spectral.hpp"
#include "oracles.hpp"

using namespace fracineq;
using spectral::CylindricalFn;
using spectral::cylindrical_projection;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

double rel_max(std::span<const double> a, std::span<const double> b) {
    double e = 0.0, n = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        e = std::max(e, std::abs(a[i] - b[i]));
        n = std::max(n, std::abs(b[i]));
    }
    return n > 0.0 ? e / n : e;
}

GridPtr periodic(std::size_t n) { return make_grid(GridKind::Periodic, {0.0, 2.0 * kPi}, n); }

// Symmetric nonnegative kernels of three shapes, drawn from rng.
nonlocal::KernelSpec random_kernel(std::mt19937_64& rng, double h) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    switch (rng() % 3) {
        case 0: {
            std::vector<double> table(2 + rng() % 63, 0.0);
            for (std::size_t m = 1; m < table.size(); ++m) table[m] = unif(rng) < 0.3 ? 0.0 : unif(rng);
            return nonlocal::lattice_kernel(table, h);
        }
        case 1: {
            auto K = nonlocal::frac_kernel(FracParams::make(0.05 + 0.9 * unif(rng)));
            K.cutoff = (0.2 + 2.8 * unif(rng));
            return K;
        }
        default: {
            const double len = 0.1 + unif(rng);
            return nonlocal::make_kernel([len](std::span<const double> x) { return std::exp(-std::abs(x[0]) / len); },
                                         0.0, 1, kPi);
        }
    }
}

GridFunction zero_mean(const GridFunction& u) {
    double m = 0.0;
    for (double v : u.values()) m += v;
    m /= static_cast<double>(u.size());
    return map(u, [m](double v) { return v - m; });
}

Outcome criterion1() {
    std::mt19937_64 rng(2024);
    const auto g = periodic(128);
    const auto battery = harness::convex_battery();
    double worst = std::numeric_limits<double>::infinity();
    int failures = 0;
    for (int t = 0; t < 100; ++t) {
        const auto K = random_kernel(rng, g->spacing());
        const auto op = harness::kernel_handle(g, K);
        const auto u = random_smooth(g, 100 + t, 1 + rng() % 16);
        const auto& phi = battery[static_cast<std::size_t>(t) % battery.size()];
        const auto r = harness::check_cordoba(op, u.values(), phi, 0.0);
        worst = std::min(worst, r.min_residual);
        failures += r.pass ? 0 : 1;
    }
    return {failures == 0, fmt("100 triples, N=128, tol 0, min residual %.3g", worst)};
}

Outcome criterion2() {
    std::mt19937_64 rng(77);
    const auto g = periodic(128);
    double worst = 0.0;
    bool ok = true;
    for (int t = 0; t < 20; ++t) {
        const auto K = random_kernel(rng, g->spacing());
        const auto r = harness::check_identities(random_smooth(g, 500 + t, 12), K, 1e-10);
        worst = std::max(worst, -r.min_residual);
        ok = ok && r.pass;
    }
    return {ok, fmt("20 trials, N=128, max relative residual %.3g (tol 1e-10)", worst)};
}

Outcome criterion3() {
    const auto g = periodic(128);
    const auto basis = spectral::fourier_basis(g, 64);
    double worst = 0.0;
    for (double k : {1.0, 2.0, 5.0})
        for (double s : {0.25, 0.5, 0.75}) {
            const auto u = sample([k](double x) { return std::sin(k * x); }, g);
            const auto ref = sample([k, s](double x) { return std::pow(k, 2.0 * s) * std::sin(k * x); }, g);
            worst = std::max(worst, rel_max(spectral::apply_spectral_frac(u, s, basis).values(), ref.values()));
        }
    return {worst <= 1e-10, fmt("max relative error %.3g (tol 1e-10)", worst)};
}

Outcome criterion4() {
    const auto gp = periodic(64);
    const auto gd = make_grid(GridKind::DirichletInterval, {0.0, kPi}, 63);
    const auto fb = spectral::fourier_basis(gp, 32);
    const auto db = spectral::dirichlet_basis(gd, 63);
    const auto hb = spectral::hermite_basis(24);
    double worst = 0.0;
    std::mt19937_64 rng(4);
    std::normal_distribution<double> normal;
    for (double s : {0.25, 0.5, 0.75}) {
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            for (const auto& [g, b] : {std::pair{gp, fb}, std::pair{gd, db}}) {
                const auto u = random_smooth(g, seed, 10);
                const auto rule = spectral::default_semigroup_rule(*b, 200);
                worst = std::max(worst, rel_max(spectral::apply_semigroup_frac(u, s, b, rule).values(),
                                                spectral::apply_spectral_frac(u, s, b).values()));
            }
            std::vector<double> c(hb->size(), 0.0);
            for (std::size_t j = 0; j <= 12; ++j) c[j] = normal(rng) / (1.0 + static_cast<double>(j));
            const auto v = spectral::synthesize_values({hb, c});
            const auto rule = spectral::default_semigroup_rule(*hb, 200);
            worst = std::max(worst, rel_max(spectral::apply_semigroup_frac(v, s, hb, rule),
                                            spectral::apply_spectral_frac(v, s, hb)));
        }
    }
    return {worst <= 1e-6, fmt("three families, 200 nodes, max relative discrepancy %.3g (tol 1e-6)", worst)};
}

double dtn_error(std::size_t n, std::size_t ny) {
    const auto g = periodic(n);
    const auto u = sample([](double x) { return std::sin(x); }, g);
    const auto op = harness::extension_handle(g, FracParams::make(0.5), 10.0, ny);
    return rel_max(op.apply(u.values()), u.values());
}

Outcome criterion5() {
    const double coarse = dtn_error(256, 64);
    const double fine = dtn_error(512, 128);
    return {coarse <= 5e-2 && fine < coarse,
            fmt("(256,64) %.3g <= 5e-2, (512,128) %.3g strictly smaller", coarse, fine)};
}

Outcome criterion6() {
    const auto g = make_grid(GridKind::DirichletInterval, {-8.0, 8.0}, 512);
    const auto u = sample([](double x) { return std::exp(-x * x); }, g);
    const auto Au = nonlocal::apply_frac_pv(u, FracParams::make(0.5));
    std::vector<double> ref(g->size());
    for (std::size_t i = 0; i < ref.size(); ++i) ref[i] = oracle::frac_gaussian_fourier(0.5, g->axis()[i]);
    const double err = rel_max(Au.values(), ref);
    return {err <= 1e-3, fmt("Gaussian on [-8,8], N=512, relative error %.3g (tol 1e-3)", err)};
}

Outcome criterion7() {
    std::mt19937_64 rng(31);
    bool ok = true;
    double worst_pw = std::numeric_limits<double>::infinity(), worst_pair = std::numeric_limits<double>::infinity();
    for (int t = 0; t < 20; ++t) {
        const auto g = periodic(t % 2 == 0 ? 128 : 96);
        const harness::OperatorHandle op = t % 2 == 0 ? harness::kernel_handle(g, random_kernel(rng, g->spacing()))
                                                      : harness::frac_pv_handle(g, FracParams::make(0.2 + 0.03 * t));
        const auto u = zero_mean(random_smooth(g, 900 + t, 1 + t % 8));
        harness::KatoOptions opt;
        opt.eps = {1e-1, 1e-2, 1e-3};
        opt.pointwise_tolerance = 0.0;
        opt.pairing_tolerance = 1e-6;
        const auto r = harness::check_kato(op, u.values(), opt);
        worst_pw = std::min(worst_pw, std::stod(r.metadata.at("pointwise_min")));
        worst_pair = std::min(worst_pair, std::stod(r.metadata.at("pairing_extrapolated")));
        ok = ok && r.pass;
    }
    return {ok, fmt("20 data, pointwise min %.3g (tol 0), extrapolated pairing min %.3g (tol 1e-6)", worst_pw,
                    worst_pair)};
}

GridFunction hopf_datum(const GridPtr& g, std::uint64_t seed, std::size_t x0) {
    const auto r = random_smooth(g, seed, 4);
    std::vector<double> v(g->size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double d = r[i] - r[x0];
        const double w = g->periodic() ? 1.0 : std::sin(g->axis()[i]);
        v[i] = i == x0 ? 0.0 : w * d * d;
    }
    return GridFunction(g, std::move(v));
}

Outcome criterion8() {
    bool ok = true;
    double worst_margin = -std::numeric_limits<double>::infinity(), worst_ratio = 0.0;
    const auto strip = periodic(128);
    const auto cyl = make_grid(GridKind::DirichletInterval, {0.0, kPi}, 127);
    for (std::uint64_t t = 0; t < 10; ++t) {
        const auto p = FracParams::make(0.25 + 0.25 * static_cast<double>(t % 3));
        for (const auto& g : {strip, cyl}) {
            const std::size_t x0 = 20 + 9 * t;
            const auto v = hopf_datum(g, 40 + t, x0);
            const double c1 = harness::conormal_derivative_at(v, x0, p);
            const double c2 = harness::conormal_derivative_at(map(v, [](double x) { return 2.0 * x; }), x0, p);
            const double margin = c1 / v.max_abs();
            worst_margin = std::max(worst_margin, margin);
            worst_ratio = std::max(worst_ratio, std::abs(c2 / c1 - 2.0) / 2.0);
            ok = ok && c1 <= -1e-3 * v.max_abs() && std::abs(c2 / c1 - 2.0) <= 2e-6;
        }
    }
    return {ok, fmt("conormal/||v|| at most %.3g (need <= -1e-3), doubling deviation %.3g (tol 1e-6)", worst_margin,
                    worst_ratio)};
}

Outcome criterion9() {
    const auto basis = spectral::hermite_basis(16);
    double worst = 0.0;
    for (double s : {0.25, 0.5, 0.75})
        for (std::size_t j = 0; j <= 8; ++j) {
            std::vector<double> c(basis->size(), 0.0);
            c[j] = 1.0;
            const auto v = spectral::synthesize_values({basis, c});
            const auto Av = spectral::apply_spectral_frac(v, s, basis);
            for (std::size_t i = 0; i < v.size(); ++i)
                worst = std::max(worst, std::abs(Av[i] - std::pow(static_cast<double>(j), s) * v[i]) /
                                            std::max(1.0, std::abs(v[i])));
        }
    const auto rule = gauss_hermite_rule(6);
    const std::vector<double> x = {0.37, -1.2, 0.8};
    double proj = 0.0;
    auto track = [&](double a, double b) { proj = std::max(proj, std::abs(a - b)); };
    track(cylindrical_projection([](std::span<const double> y) { return std::cos(y[0]); }, 2, 1, rule)(
              std::span<const double>(x.data(), 1)),
          std::cos(0.37));
    track(cylindrical_projection([](std::span<const double> y) { return y[1] * y[1]; }, 2, 1, rule, 2)(
              std::span<const double>(x.data(), 1)),
          1.0);
    track(cylindrical_projection([](std::span<const double> y) { return y[0] * y[1]; }, 2, 1, rule, 1)(
              std::span<const double>(x.data(), 1)),
          0.0);
    const CylindricalFn u = [](std::span<const double> y) {
        return y[0] * y[2] * y[2] + y[1] * y[1] * y[3] * y[3] - 2.0 * y[0] * y[3] + std::pow(y[2], 4.0);
    };
    for (std::size_t k = 1; k < 4; ++k)
        for (std::size_t j = k + 1; j < 4; ++j) {
            const std::span<const double> xs(x.data(), k);
            track(cylindrical_projection(cylindrical_projection(u, 4, j, rule, 4), j, k, rule, 4)(xs),
                  cylindrical_projection(u, 4, k, rule, 4)(xs));
        }
    return {worst <= 1e-8 && proj <= 1e-12,
            fmt("OU eigen error %.3g (tol 1e-8), projection/tower error %.3g (tol 1e-12)", worst, proj)};
}

Outcome criterion10() {
    bool ok = true;
    std::string detail;
    const char* sep = "";
    for (double s : {0.25, 0.5, 0.75}) {
        const auto p = FracParams::make(s);
        const auto d = extension::calibrate_realization_constant(p);
        const auto st = extension::calibrate_st_constant(p);
        ok = ok && std::abs(d.ratio - 1.0) <= 5e-2 && std::abs(st.ratio - 1.0) <= 5e-2;
        detail += sep + fmt("s=%.2f d_s ratio %.4f, ", s, d.ratio) +
                  fmt("|c_st| ratio %.4f (c_st %.4f, d_s %.4f)", st.ratio, st.closed_form, d.closed_form);
        sep = "; ";
    }
    return {ok, detail};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"exact discrete Cordoba", criterion1},
        {"nonlocal identities", criterion2},
        {"Fourier multiplier oracle", criterion3},
        {"semigroup vs eigen", criterion4},
        {"extension DtN vs fractional Laplacian", criterion5},
        {"P.V. kernel vs Fourier oracle", criterion6},
        {"Kato inequality", criterion7},
        {"Hopf lemma", criterion8},
        {"Ornstein-Uhlenbeck and cylindrical projection", criterion9},
        {"constants ledger", criterion10},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("%s %2zu %s: %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                    o.detail.c_str(), sec);
        std::fflush(stdout);
        failed += o.pass ? 0 : 1;
    }
    return failed == 0 ? 0 : 1;
}
