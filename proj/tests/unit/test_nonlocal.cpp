#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Dense>
#include <boost/math/special_functions/hypergeometric_1F1.hpp>

#include "fracineq/error.hpp"
#include "fracineq/kernel.hpp"
#include "oracles.hpp"

using namespace fracineq;
using namespace fracineq::nonlocal;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double rel_max_err(std::span<const double> a, const std::function<double(std::size_t)>& ref) {
    double err = 0.0, nrm = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        err = std::max(err, std::abs(a[i] - ref(i)));
        nrm = std::max(nrm, std::abs(ref(i)));
    }
    return err / nrm;
}

double box_pv_error(double s, std::size_t N) {
    const auto g = make_grid(GridKind::DirichletBox, {-6.0, 6.0}, N);
    const auto u = sample([](double x, double y) { return std::exp(-x * x - y * y); }, g);
    const auto Au = apply_frac_pv(u, FracParams::make(s, 2));
    return rel_max_err(Au.values(), [&](std::size_t i) {
        const auto p = g->point(i);
        const double r2 = p[0] * p[0] + p[1] * p[1];
        return std::pow(4.0, s) * std::tgamma(1.0 + s) * boost::math::hypergeometric_1F1(1.0 + s, 1.0, -r2);
    });
}

}  // namespace

TEST(Kernel, MakeKernelValidates) {
    EXPECT_THROW(make_kernel([](std::span<const double> h) { return -std::abs(h[0]); }, 1.0, 1), InvalidArgument);
    EXPECT_THROW(make_kernel([](std::span<const double> h) { return h[0] > 0 ? 2.0 : 1.0; }, 0.0, 1),
                 InvalidArgument);
    EXPECT_THROW(make_kernel([](std::span<const double> h) { return std::pow(std::abs(h[0]), -3.0); }, 3.0, 1),
                 InvalidArgument);
    EXPECT_NO_THROW(make_kernel([](std::span<const double> h) { return h[0] > 0 ? 2.0 : 1.0; }, 0.0, 1, 1.0, false));
    const auto K = make_kernel([](std::span<const double> h) { return std::exp(-std::abs(h[0])); }, 0.0, 1, 2.0);
    EXPECT_DOUBLE_EQ(K(0.5), std::exp(-0.5));
}

TEST(Kernel, FracKernelValue) {
    const auto p = FracParams::make(0.5);
    const auto K = frac_kernel(p);
    EXPECT_NEAR(K(2.0), p.c_kernel / 4.0, 1e-16);
}

TEST(Kernel, SecondDifference) {
    const auto g = make_grid(GridKind::Periodic, {0.0, 1.0}, 8);
    const auto u = sample([](double x) { return x * x; }, g);
    // delta_h u(x) = -(u(x+h) + u(x-h) - 2u(x)) = -2 h^2 for u = x^2 away from the wrap.
    EXPECT_NEAR(second_difference(u, 3, 2.0 * g->spacing()), -2.0 * 0.25 * 0.25, 1e-15);
    const auto d = make_grid(GridKind::DirichletInterval, {0.0, 1.0}, 3);
    const GridFunction v(d, {1.0, 1.0, 1.0});
    EXPECT_NEAR(second_difference(v, 0, d->spacing()), -(1.0 + 0.0 - 2.0), 1e-15);
    EXPECT_THROW(second_difference(u, 0, 0.3 * g->spacing()), InvalidArgument);
}

TEST(Kernel, NondivMatchesBruteForceSum) {
    const auto g = make_grid(GridKind::Periodic, {0.0, kTwoPi}, 48);
    const double h = g->spacing();
    const auto u = random_smooth(g, 5, 8);
    auto expk = [](double x) { return std::exp(-std::abs(x)); };
    const double cutoff = 10.0 * h;
    const auto K = make_kernel([&](std::span<const double> x) { return expk(x[0]); }, 0.0, 1, cutoff);
    const auto I = apply_nondiv(u, K);
    const auto L = apply_translation_invariant(u, K);
    const auto ref = oracle::periodic_kernel_sum(u.values(), h, expk, 10, 2.0);
    for (std::size_t i = 0; i < u.size(); ++i) {
        EXPECT_NEAR(I[i], ref[i], 1e-13);
        EXPECT_NEAR(L[i], 0.5 * ref[i], 1e-13);
    }
}

TEST(Kernel, LatticeKernelWrapsPastHalfPeriod) {
    const auto g = make_grid(GridKind::Periodic, {0.0, 1.0}, 8);
    std::vector<double> table = {0.0, 1.0, 0.0, 0.5, 0.0, 0.0, 0.25, 0.0, 0.0, 2.0};
    const auto K = lattice_kernel(table, g->spacing());
    const auto u = random_smooth(g, 9, 3);
    const auto I = apply_nondiv(u, K);
    const auto ref = oracle::periodic_kernel_sum(
        u.values(), g->spacing(),
        [&](double x) {
            const auto m = static_cast<std::size_t>(std::lround(std::abs(x) / g->spacing()));
            return m < table.size() ? table[m] : 0.0;
        },
        static_cast<long>(table.size()) - 1, 2.0);
    for (std::size_t i = 0; i < u.size(); ++i) EXPECT_NEAR(I[i], ref[i], 1e-13);
}

TEST(Kernel, AnnihilatesConstantsOnPeriodicGrids) {
    const auto g = make_grid(GridKind::Periodic, {0.0, kTwoPi}, 64);
    const GridFunction one(g, std::vector<double>(64, 3.0));
    for (double s : {0.25, 0.75}) {
        const auto Au = apply_frac_pv(one, FracParams::make(s));
        EXPECT_LE(Au.max_abs(), 1e-12);
    }
}

TEST(FracPv, GaussianOracleSelfConsistency) {
    for (double s : {0.25, 0.5, 0.75})
        for (double x : {0.0, 0.8, 2.5, 6.0})
            EXPECT_NEAR(oracle::frac_gaussian_kummer(s, x), oracle::frac_gaussian_fourier(s, x), 1e-10);
}

TEST(FracPv, GaussianOnTruncatedLine) {
    const std::vector<std::pair<double, double>> cases = {{0.25, 1e-6}, {0.5, 1e-5}, {0.75, 1e-4}};
    for (const auto& [s, tol] : cases) {
        const auto g = make_grid(GridKind::DirichletInterval, {-8.0, 8.0}, 511);
        const auto u = sample([](double x) { return std::exp(-x * x); }, g);
        PvDiagnostics diag;
        const auto Au = apply_frac_pv(u, FracParams::make(s), &diag);
        const double err =
            rel_max_err(Au.values(), [&](std::size_t i) { return oracle::frac_gaussian_kummer(s, g->axis()[i]); });
        EXPECT_LE(err, tol) << "s=" << s;
        EXPECT_FALSE(diag.tail_warning);
        EXPECT_GT(diag.r_trunc, 16.0 * 7.9);
    }
}

TEST(FracPv, ConvergesUnderRefinement) {
    double prev = 1.0;
    for (std::size_t N : {127u, 255u, 511u}) {
        const auto g = make_grid(GridKind::DirichletInterval, {-8.0, 8.0}, N);
        const auto u = sample([](double x) { return std::exp(-x * x); }, g);
        const auto Au = apply_frac_pv(u, FracParams::make(0.6));
        const double err =
            rel_max_err(Au.values(), [&](std::size_t i) { return oracle::frac_gaussian_kummer(0.6, g->axis()[i]); });
        EXPECT_LT(err, prev);
        prev = err;
    }
}

TEST(FracPv, PeriodicEigenmode) {
    const auto g = make_grid(GridKind::Periodic, {0.0, kTwoPi}, 256);
    const auto u = sample([](double x) { return std::sin(3.0 * x); }, g);
    for (double s : {0.3, 0.7}) {
        const auto Au = apply_frac_pv(u, FracParams::make(s));
        const double lam = std::pow(3.0, 2.0 * s);
        EXPECT_LE(rel_max_err(Au.values(), [&](std::size_t i) { return lam * u[i]; }), 1e-3);
    }
}

TEST(FracPv, GaussianOnBox) {
    const std::vector<std::pair<double, double>> cases = {{0.25, 5e-4}, {0.5, 2e-3}, {0.75, 1e-2}};
    for (const auto& [s, tol] : cases) {
        const double coarse = box_pv_error(s, 31);
        const double fine = box_pv_error(s, 63);
        EXPECT_LE(fine, tol) << s;
        EXPECT_LT(fine, coarse) << s;
    }
}

TEST(FracPv, WeightsAreNonnegative) {
    for (auto kind : {GridKind::Periodic, GridKind::DirichletInterval, GridKind::DirichletBox}) {
        const auto g = make_grid(kind, {0.0, 1.0}, 15);
        const auto op = frac_pv_operator(g, FracParams::make(0.4, g->dim()));
        for (double w : op.weights()) EXPECT_GE(w, 0.0);
        EXPECT_GE(op.tail_coefficient(), 0.0);
    }
}

TEST(Restricted, SymmetricMMatrix) {
    for (auto kind : {GridKind::DirichletInterval, GridKind::DirichletBox}) {
        const auto g = make_grid(kind, {-1.0, 1.0}, kind == GridKind::DirichletBox ? 9 : 31);
        const RestrictedOperator R(g, FracParams::make(0.35, g->dim()));
        const auto A = oracle::assemble([&](std::span<const double> u) { return R.apply(u); }, g->size());
        EXPECT_EQ((A - A.transpose()).cwiseAbs().maxCoeff(), 0.0);
        for (Eigen::Index i = 0; i < A.rows(); ++i) {
            double offsum = 0.0;
            for (Eigen::Index j = 0; j < A.cols(); ++j) {
                if (i == j) continue;
                EXPECT_LE(A(i, j), 0.0);
                offsum += A(i, j);
            }
            EXPECT_GT(A(i, i) + offsum, 0.0);  // strict diagonal dominance from the exterior part
        }
    }
}

TEST(Restricted, FirstEigenvalueOfHalfLaplacian) {
    double prev = 1.0;
    for (std::size_t N : {63u, 127u, 255u}) {
        const auto g = make_grid(GridKind::DirichletInterval, {-1.0, 1.0}, N);
        const RestrictedOperator R(g, FracParams::make(0.5));
        const Eigen::MatrixXd A = oracle::assemble([&](std::span<const double> u) { return R.apply(u); }, N);
        const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A, Eigen::EigenvaluesOnly);
        const double err = std::abs(es.eigenvalues()(0) - oracle::kRestrictedHalfLambda1);
        EXPECT_LT(err, prev);
        prev = err;
    }
    EXPECT_LE(prev / oracle::kRestrictedHalfLambda1, 2e-3);
}

TEST(Restricted, WeakMaximumPrinciple) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const auto g = make_grid(GridKind::DirichletInterval, {0.0, 1.0}, 40);
    const RestrictedOperator R(g, FracParams::make(0.6));
    const auto A = oracle::assemble([&](std::span<const double> u) { return R.apply(u); }, g->size());
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
    for (int trial = 0; trial < 10; ++trial) {
        Eigen::VectorXd f(g->size());
        for (Eigen::Index i = 0; i < f.size(); ++i) f(i) = unif(rng) < 0.3 ? unif(rng) : 0.0;
        const Eigen::VectorXd u = lu.solve(f);
        EXPECT_GE(u.minCoeff(), -1e-14);
    }
}

TEST(Restricted, DiffersFromPvOnlyThroughExterior) {
    // For u vanishing near the boundary the restricted and P.V. operators see
    // the same zero extension, so they agree up to quadrature differences.
    const auto g = make_grid(GridKind::DirichletInterval, {-8.0, 8.0}, 255);
    const auto u = sample([](double x) { return std::exp(-x * x); }, g);
    const auto p = FracParams::make(0.5);
    const auto a = apply_restricted(u, p);
    const auto b = apply_frac_pv(u, p);
    EXPECT_LE(max_abs_diff(a, b) / b.max_abs(), 1e-3);
}
