#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "fracineq/error.hpp"
#include "fracineq/harness.hpp"
#include "fracineq/kernel.hpp"

using namespace fracineq;
using namespace fracineq::harness;

namespace {

constexpr double kPi = std::numbers::pi;

GridPtr periodic(std::size_t n) { return make_grid(GridKind::Periodic, {0.0, 2.0 * kPi}, n); }

nonlocal::KernelSpec random_lattice_kernel(std::mt19937_64& rng, std::size_t reach, double h) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<double> table(reach + 1, 0.0);
    for (std::size_t m = 1; m <= reach; ++m) table[m] = unif(rng) < 0.3 ? 0.0 : std::pow(unif(rng), 2.0);
    return nonlocal::lattice_kernel(table, h);
}

}  // namespace

TEST(Cordoba, ExactForRandomKernels) {
    std::mt19937_64 rng(99);
    const auto g = periodic(128);
    for (int trial = 0; trial < 10; ++trial) {
        const auto K = random_lattice_kernel(rng, 40, g->spacing());
        const auto op = kernel_handle(g, K);
        const auto u = random_smooth(g, 1000 + trial, 12);
        for (const auto& phi : convex_battery()) {
            const auto r = check_cordoba(op, u.values(), phi, 0.0);
            EXPECT_TRUE(r.pass) << phi.name << " " << r.min_residual;
        }
    }
}

TEST(Cordoba, ExactForFractionalKernelOperators) {
    for (double s : {0.25, 0.75}) {
        const auto p = FracParams::make(s);
        const auto gd = make_grid(GridKind::DirichletInterval, {0.0, kPi}, 63);
        const auto gb = make_grid(GridKind::DirichletBox, {0.0, 1.0}, 11);
        const std::vector<std::pair<OperatorHandle, GridFunction>> ops = {
            {frac_pv_handle(periodic(64), p), random_smooth(periodic(64), 4, 6)},
            {frac_pv_handle(gd, p), random_smooth(gd, 5, 6)},
            {restricted_handle(gd, p), random_smooth(gd, 6, 6)},
            {frac_pv_handle(gb, FracParams::make(s, 2)), random_smooth(gb, 7, 3)},
        };
        for (const auto& [op, u] : ops)
            for (const auto& phi : convex_battery()) {
                const auto r = check_cordoba(op, u.values(), phi, 0.0);
                EXPECT_TRUE(r.pass) << op.id << " " << phi.name << " " << r.min_residual;
            }
    }
}

TEST(Cordoba, AffineIsAnEquality) {
    const auto g = periodic(64);
    const auto u = random_smooth(g, 3, 8);
    const auto affine = find_convex("affine");
    std::mt19937_64 rng(5);
    const auto op = kernel_handle(g, random_lattice_kernel(rng, 20, g->spacing()));
    for (double r : cordoba_residual(op, u.values(), affine)) EXPECT_EQ(r, 0.0);
    const auto four = fourier_frac_handle(g, 0.5);
    for (double r : cordoba_residual(four, u.values(), affine)) EXPECT_NEAR(r, 0.0, 1e-12);
}

TEST(Cordoba, FourierSquareOnSine) {
    const auto g = periodic(256);
    const auto u = sample([](double x) { return std::sin(x); }, g);
    const auto r = check_cordoba(fourier_frac_handle(g, 0.5), u.values(), find_convex("square"), 1e-8);
    EXPECT_TRUE(r.pass) << r.min_residual;
}

TEST(Cordoba, RejectsValuesOutsideTheConvexityDomain) {
    const auto g = periodic(16);
    std::vector<double> u(16, 0.0);
    u[3] = 800.0;
    EXPECT_THROW(check_cordoba(fourier_frac_handle(g, 0.5), u, find_convex("exp"), 0.0), InvalidArgument);
}

TEST(Cordoba, ZeroExteriorUsesShiftedComposition) {
    // exp(0) = 1, so without the shift the Dirichlet operator would see a jump to zero.
    const auto gd = make_grid(GridKind::DirichletInterval, {0.0, kPi}, 63);
    const auto op = spectral_dirichlet_handle(gd, 0.5);
    EXPECT_TRUE(op.zero_exterior);
    const auto u = random_smooth(gd, 8, 4);
    const auto r = check_cordoba(op, u.values(), find_convex("exp"), default_tolerance(op, u.values(), find_convex("exp")));
    EXPECT_TRUE(r.pass) << r.min_residual;
}

TEST(Kato, PointwiseExactAndPairingConverges) {
    std::mt19937_64 rng(7);
    const auto g = periodic(128);
    for (int trial = 0; trial < 5; ++trial) {
        const auto op = kernel_handle(g, random_lattice_kernel(rng, 30, g->spacing()));
        const auto u = random_smooth(g, 50 + trial, 6);
        const auto r = check_kato(op, u.values(), {});
        EXPECT_TRUE(r.pass) << r.min_residual;
        EXPECT_GE(std::stod(r.metadata.at("pointwise_min")), 0.0);
    }
}

TEST(Kato, ConstantSignMakesBothSidesEqual) {
    const auto g = periodic(64);
    const auto u = map(random_smooth(g, 4, 4), [](double x) { return 5.0 + x; });
    ASSERT_GT(*std::min_element(u.values().begin(), u.values().end()), 1.0);
    const auto op = frac_pv_handle(g, FracParams::make(0.5));
    KatoOptions opt;
    opt.eps = {1e-2, 1e-4, 1e-6};
    const auto r = check_kato(op, u.values(), opt);
    EXPECT_NEAR(std::stod(r.metadata.at("pairing_extrapolated")), 0.0, 1e-10);
}

TEST(Kato, OddDatumWithUnitTestFunction) {
    const auto g = periodic(128);
    const auto u = sample([](double x) { return std::sin(x) + 0.3 * std::sin(3.0 * x); }, g);
    const auto r = check_kato(frac_pv_handle(g, FracParams::make(0.4)), u.values(), {});
    EXPECT_TRUE(r.pass);
    EXPECT_GE(std::stod(r.metadata.at("pairing_extrapolated")), -1e-6);
}

TEST(Kato, ResidualIsNotMonotoneInEps) {
    // Nearest-neighbour kernel, u = 10 except one node at 20: at the node next
    // to the bump the residual grows with eps, so it is not nonincreasing.
    const auto g = make_grid(GridKind::Periodic, {0.0, 8.0}, 8);
    const auto op = kernel_handle(g, nonlocal::lattice_kernel({0.0, 1.0}, g->spacing()));
    std::vector<double> u(8, 10.0);
    u[4] = 20.0;
    const double r1 = cordoba_residual(op, u, phi_eps(1.0))[3];
    const double r2 = cordoba_residual(op, u, phi_eps(2.0))[3];
    EXPECT_GE(r1, 0.0);
    EXPECT_LT(r1, r2);
    // Per unit weight the two residuals are 0.0248 and 0.0958.
    const double w = 2.0 * g->spacing();
    EXPECT_NEAR(r1 / w, 0.024733, 1e-5);
    EXPECT_NEAR(r2 / w, 0.095903, 1e-5);
    // The sign-form residual at eps -> 0 is zero there (both values positive).
    EXPECT_LE(cordoba_residual(op, u, phi_eps(1e-6))[3], 1e-10);
}

TEST(Kato, RejectsIncreasingEps) {
    const auto g = periodic(16);
    const auto u = random_smooth(g, 1, 2);
    KatoOptions opt;
    opt.eps = {1e-3, 1e-2};
    EXPECT_THROW(check_kato(frac_pv_handle(g, FracParams::make(0.5)), u.values(), opt), InvalidArgument);
}

TEST(Hopf, StripAndCylinder) {
    const auto p = FracParams::make(0.4);
    const auto gs = periodic(128);
    const std::size_t x0 = 40;
    const double c0 = gs->axis()[x0];
    auto v = sample([c0](double x) { return 1.0 - std::cos(x - c0); }, gs);
    std::vector<double> vals(v.values().begin(), v.values().end());
    vals[x0] = 0.0;
    const GridFunction vs(gs, vals);
    const auto rs = check_hopf(vs, x0, p);
    EXPECT_TRUE(rs.pass) << rs.min_residual;
    EXPECT_LT(std::stod(rs.metadata.at("conormal_derivative")), -1e-3 * vs.max_abs());

    const auto gc = make_grid(GridKind::DirichletInterval, {0.0, kPi}, 127);
    const std::size_t y0 = 63;
    const double d0 = gc->axis()[y0];
    std::vector<double> w(127);
    for (std::size_t i = 0; i < 127; ++i) {
        const double x = gc->axis()[i];
        w[i] = i == y0 ? 0.0 : std::sin(x) * (x - d0) * (x - d0);
    }
    const auto rc = check_hopf(GridFunction(gc, w), y0, p);
    EXPECT_TRUE(rc.pass) << rc.min_residual;
}

TEST(Hopf, LinearInTheDatum) {
    const auto g = periodic(64);
    const auto v = map(random_smooth(g, 3, 3), [](double x) { return x * x; });
    std::vector<double> vals(v.values().begin(), v.values().end());
    vals[10] = 0.0;
    const GridFunction v1(g, vals);
    const auto v2 = map(v1, [](double x) { return 2.0 * x; });
    for (double s : {0.25, 0.5, 0.75}) {
        const auto p = FracParams::make(s);
        const double c1 = conormal_derivative_at(v1, 10, p);
        const double c2 = conormal_derivative_at(v2, 10, p);
        EXPECT_NEAR(c2 / c1, 2.0, 2e-6);
    }
}

TEST(Hopf, RejectsBadData) {
    const auto g = periodic(32);
    const auto p = FracParams::make(0.5);
    EXPECT_THROW(check_hopf(GridFunction::zeros(g), 3, p), InvalidArgument);
    const auto v = sample([](double x) { return 2.0 + std::sin(x); }, g);
    EXPECT_THROW(check_hopf(v, 3, p), InvalidArgument);
    const auto neg = sample([](double x) { return std::sin(x); }, g);
    EXPECT_THROW(check_hopf(neg, 0, p), InvalidArgument);
}

TEST(Identities, RandomDataTruncatedFractionalKernel) {
    const auto g = periodic(128);
    for (double s : {0.25, 0.5, 0.75}) {
        auto K = nonlocal::frac_kernel(FracParams::make(s));
        K.cutoff = kPi;
        for (std::uint64_t seed = 1; seed <= 3; ++seed) {
            const auto r = check_identities(random_smooth(g, seed, 10), K);
            EXPECT_TRUE(r.pass) << r.min_residual;
            // With plus signs on the correction terms the identity does not balance.
            EXPECT_GT(std::stod(r.metadata.at("product_rule_opposite_sign_residual")), 1e-3);
            EXPECT_GT(std::stod(r.metadata.at("energy_opposite_sign_residual")), 1e-3);
        }
    }
}

TEST(Identities, ConstantAndSingleMode) {
    const auto g = periodic(64);
    auto K = nonlocal::frac_kernel(FracParams::make(0.5));
    K.cutoff = kPi;
    const GridFunction c(g, std::vector<double>(64, 2.0));
    const auto rc = check_identities(c, K);
    EXPECT_TRUE(rc.pass);
    EXPECT_EQ(std::stod(rc.metadata.at("energy_residual")), 0.0);
    const auto m = sample([](double x) { return std::cos(4.0 * x); }, g);
    EXPECT_TRUE(check_identities(m, K).pass);
    const auto gd = make_grid(GridKind::DirichletInterval, {0.0, 1.0}, 15);
    EXPECT_THROW(check_identities(GridFunction::zeros(gd), K), InvalidArgument);
}

TEST(Cross, FourRoutesAgreeOnSines) {
    const auto g = periodic(256);
    for (double k : {1.0, 2.0}) {
        const auto u = sample([k](double x) { return std::sin(k * x); }, g);
        const auto r = cross_validate(u, FracParams::make(0.5), {10.0, 64, 5e-2, true});
        EXPECT_TRUE(r.pass) << r.min_residual;
        EXPECT_EQ(r.metadata.at("refinement_shrinks"), "true");
    }
    const auto r0 = cross_validate(GridFunction::zeros(g), FracParams::make(0.3), {10.0, 32, 5e-2, false});
    EXPECT_EQ(r0.min_residual, 0.0);
    EXPECT_EQ(relative_discrepancy(std::vector<double>{0.0}, std::vector<double>{0.0}), 0.0);
}

TEST(Refinement, SpectralAndExtensionViolationsShrink) {
    const auto phi = find_convex("softplus");
    for (const std::string kind : {"spectral-dirichlet", "extension-strip"}) {
        int improved = 0;
        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
            double violation[2];
            for (int level = 0; level < 2; ++level) {
                const std::size_t n = level == 0 ? 64 : 128;
                GridPtr g;
                OperatorHandle op;
                if (kind == "spectral-dirichlet") {
                    g = make_grid(GridKind::DirichletInterval, {0.0, kPi}, n - 1);
                    op = spectral_dirichlet_handle(g, 0.5);
                } else {
                    g = periodic(n);
                    op = extension_handle(g, FracParams::make(0.5), 10.0, n / 2);
                }
                const auto u = random_smooth(g, seed, 4);
                const auto r = check_cordoba(op, u.values(), phi, 0.0);
                violation[level] = std::max(0.0, -r.min_residual) / cordoba_scale(op, u.values(), phi);
            }
            if (violation[1] <= violation[0]) ++improved;
        }
        EXPECT_GE(improved, 9) << kind;
    }
}
