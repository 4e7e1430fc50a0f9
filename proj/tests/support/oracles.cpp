#include "oracles.hpp"

#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/hypergeometric_1F1.hpp>

namespace oracle {

double frac_gaussian_kummer(double s, double x) {
    const double pre = std::pow(4.0, s) * std::tgamma(0.5 + s) / std::tgamma(0.5);
    return pre * boost::math::hypergeometric_1F1(0.5 + s, 0.5, -x * x);
}

double frac_gaussian_fourier(double s, double x) {
    auto f = [&](double xi) {
        return std::pow(xi, 2.0 * s) * std::sqrt(std::numbers::pi) * std::exp(-0.25 * xi * xi) * std::cos(xi * x);
    };
    double err = 0.0;
    const double v = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, 40.0, 20, 1e-14, &err);
    return v / std::numbers::pi;
}

std::vector<double> periodic_kernel_sum(std::span<const double> u, double h, const std::function<double(double)>& K,
                                        long M, double factor) {
    const long n = static_cast<long>(u.size());
    std::vector<double> out(u.size(), 0.0);
    for (long i = 0; i < n; ++i) {
        double acc = 0.0;
        for (long m = -M; m <= M; ++m) {
            if (m == 0) continue;
            const long j = ((i + m) % n + n) % n;
            acc += K(static_cast<double>(m) * h) * (u[i] - u[j]);
        }
        out[i] = factor * h * acc;
    }
    return out;
}

Eigen::MatrixXd assemble(const std::function<std::vector<double>(std::span<const double>)>& apply, std::size_t n) {
    Eigen::MatrixXd A(n, n);
    std::vector<double> e(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        e[j] = 1.0;
        const auto col = apply(e);
        for (std::size_t i = 0; i < n; ++i) A(i, j) = col[i];
        e[j] = 0.0;
    }
    return A;
}

}  // namespace oracle
