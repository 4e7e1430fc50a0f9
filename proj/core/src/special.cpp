#include "fracineq/special.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/expint.hpp>
#include <boost/math/special_functions/zeta.hpp>
#include <cmath>
#include <limits>

#include "fracineq/error.hpp"

namespace fracineq::special {

double zeta(double x) { return boost::math::zeta(x); }

double dirichlet_beta(double s) {
    detail::require(s > 0.0, "dirichlet_beta needs s > 0");
    // beta(s) = 1/Gamma(s) int_0^inf t^{s-1} / (2 cosh t) dt
    boost::math::quadrature::exp_sinh<double> integrator;
    auto f = [s](double t) { return std::pow(t, s - 1.0) / (2.0 * std::cosh(t)); };
    const double v = integrator.integrate(f, 0.0, std::numeric_limits<double>::infinity());
    return v / std::tgamma(s);
}

double square_lattice_zeta(double w) {
    const double half = 0.5 * w;
    return 4.0 * zeta(half) * dirichlet_beta(half);
}

double expint_general(double p, double z) {
    detail::require(p > 1.0 && z >= 0.0, "expint_general needs p > 1 and z >= 0");
    if (z == 0.0) return 1.0 / (p - 1.0);
    constexpr double eps = 1e-16;
    if (z > 1.0) {
        // Modified Lentz evaluation of the continued fraction.
        constexpr double tiny = 1e-300;
        double b = z + p;
        double c = 1.0 / tiny;
        double d = 1.0 / b;
        double h = d;
        for (int i = 1; i < 10000; ++i) {
            const double an = -static_cast<double>(i) * (p - 1.0 + static_cast<double>(i));
            b += 2.0;
            d = 1.0 / (an * d + b);
            c = b + an / c;
            const double del = c * d;
            h *= del;
            if (std::abs(del - 1.0) < eps) break;
        }
        return h * std::exp(-z);
    }
    // z <= 1: E_p(z) = z^{p-1} Gamma(1-p) - sum_k (-z)^k / (k! (k + 1 - p)).
    const double nearest = std::round(p);
    if (std::abs(p - nearest) <= 1e-12) return boost::math::expint(static_cast<unsigned>(nearest), z);
    double sum = 0.0;
    double term = 1.0;  // (-z)^k / k!
    for (int k = 0; k < 200; ++k) {
        const double contrib = term / (static_cast<double>(k) + 1.0 - p);
        sum += contrib;
        if (std::abs(contrib) < eps * std::abs(sum) && k > 2) break;
        term *= -z / static_cast<double>(k + 1);
    }
    return std::pow(z, p - 1.0) * std::tgamma(1.0 - p) - sum;
}

double bessel_k(double nu, double z) { return boost::math::cyl_bessel_k(nu, z); }

}  // namespace fracineq::special
